//! Ext-dimension formulas over the coset poset W+ and their growth
//! statistics: truncated sums over weights, coefficient maxima, the cx/Cx
//! sequences, mu row sums, and the zigzag upper bound.
//!
//! Everything is indexed by W+ elements; the anchor weight stays symbolic.
//! Statistics over the infinite W+ are truncated at a length bound L and
//! recomputed at L+1 and L+2, so a stat carries its own evidence of
//! stabilization instead of a claim of exactness. The group table must
//! therefore always extend two strata past the requested bound.

use crate::error::Error;
use crate::growth::{default_window, estimate_gamma, GrowthSequence};
use crate::kl::KlTable;
use crate::roots::Weight;

/// A truncated statistic: the value at length bound L, and whether bumping
/// the bound to L+1 and L+2 left it unchanged.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct TruncatedStat {
    pub value: i64,
    pub truncation_l: u32,
    pub stabilized: bool,
}

fn stabilize(l: u32, mut f: impl FnMut(u32) -> i64) -> TruncatedStat {
    let value = f(l);
    let stabilized = f(l + 1) == value && f(l + 2) == value;
    TruncatedStat { value, truncation_l: l, stabilized }
}

/// The table must hold every element of length <= l+2, either because it was
/// generated that far or because the whole finite group fits.
fn require_window(kl: &KlTable, l: u32) -> Result<(), Error> {
    let t = kl.group();
    let complete = t.top_length() < t.max_length();
    if !complete && t.max_length() < l + 2 {
        return Err(Error::Truncation(format!(
            "stat window {l}+2 exceeds table length {}",
            t.max_length()
        )));
    }
    Ok(())
}

fn require_wplus(kl: &KlTable, i: u32) -> Result<(), Error> {
    if !kl.group().is_wplus(i) {
        return Err(Error::Domain(format!(
            "{} is not a longest coset representative",
            kl.group().word_string(i)
        )));
    }
    Ok(())
}

/// dim Ext^n(L(x), nabla(z)): the t^(l(x)-l(z)-n) coefficient of P_{z,x}.
pub fn ext_l_nabla(kl: &KlTable, x: u32, z: u32, n: u32) -> Result<i64, Error> {
    require_wplus(kl, x)?;
    require_wplus(kl, z)?;
    Ok(ext_nabla_raw(kl, x, z, n))
}

fn ext_nabla_raw(kl: &KlTable, x: u32, z: u32, n: u32) -> i64 {
    let k = kl.group().length(x) as i64 - kl.group().length(z) as i64 - n as i64;
    kl.kl(z, x).t_coefficient(k)
}

/// dim Ext^n(L(x), L(y)): the (KL2) double sum over z in W+ and a+b = n.
pub fn ext_l_l(kl: &KlTable, x: u32, y: u32, n: u32) -> Result<i64, Error> {
    require_wplus(kl, x)?;
    require_wplus(kl, y)?;
    let wplus = kl.group().wplus_indices();
    Ok(ext_ll_raw(kl, &wplus, x, y, n))
}

fn ext_ll_raw(kl: &KlTable, wplus: &[u32], x: u32, y: u32, n: u32) -> i64 {
    let t = kl.group();
    let mut total = 0;
    for &z in wplus {
        if !t.bruhat_leq(z, x) || !t.bruhat_leq(z, y) {
            continue;
        }
        let px = kl.kl(z, x);
        let py = kl.kl(z, y);
        let (gx, gy) = (
            t.length(x) as i64 - t.length(z) as i64,
            t.length(y) as i64 - t.length(z) as i64,
        );
        for a in 0..=n as i64 {
            total += px.t_coefficient(gx - a) * py.t_coefficient(gy - (n as i64 - a));
        }
    }
    total
}

/// Truncated sum over all simples: sum of ext_l_l(x, y, n) over y in W+ with
/// l(y) <= L.
pub fn sum_over_nu(kl: &KlTable, x: u32, n: u32, l: u32) -> Result<TruncatedStat, Error> {
    require_wplus(kl, x)?;
    if l < kl.group().length(x) + n {
        return Err(Error::Truncation(format!(
            "window {l} is below l(x)+n = {}",
            kl.group().length(x) + n
        )));
    }
    require_window(kl, l)?;
    let wplus = kl.group().wplus_indices();
    Ok(stabilize(l, |m| {
        wplus
            .iter()
            .filter(|&&y| kl.group().length(y) <= m)
            .map(|&y| ext_ll_raw(kl, &wplus, x, y, n))
            .sum()
    }))
}

/// C^[n]: max over W+ pairs with lengths <= L of the t^(l(x)-l(y)-n)
/// coefficient of P_{y,x}; 0 when no pair qualifies.
pub fn c_n_max(kl: &KlTable, n: u32, l: u32) -> Result<TruncatedStat, Error> {
    if l < n {
        return Err(Error::BadArgument(format!("bound {l} is below the degree {n}")));
    }
    require_window(kl, l)?;
    let wplus = kl.group().wplus_indices();
    Ok(stabilize(l, |m| {
        let mut best = 0;
        for &x in wplus.iter().filter(|&&x| kl.group().length(x) <= m) {
            for &y in wplus.iter().filter(|&&y| kl.group().length(y) <= m) {
                best = best.max(ext_nabla_raw(kl, x, y, n));
            }
        }
        best
    }))
}

/// The cx and Cx growth sequences for n = 0..N at truncation L: term n of cx
/// maximizes ext_l_l over pairs of length <= L-n, term n of Cx maximizes the
/// y-sum (over all of W+ up to L) over x of length <= L-n.
pub fn cx_sequences(
    kl: &KlTable,
    n_max: u32,
    l: u32,
) -> Result<(GrowthSequence, GrowthSequence), Error> {
    let wplus = kl.group().wplus_indices();
    let min_len = match wplus.first() {
        Some(&w) => kl.group().length(w),
        None => return Err(Error::Truncation("table holds no W+ element".into())),
    };
    if l < n_max + min_len {
        return Err(Error::BadArgument(format!(
            "bound {l} is below N + l(w0) = {}",
            n_max + min_len
        )));
    }
    require_window(kl, l)?;
    let t = kl.group();
    let terms_at = |m: u32| -> (Vec<i64>, Vec<i64>) {
        let mut cx = Vec::with_capacity(n_max as usize + 1);
        let mut cap_cx = Vec::with_capacity(n_max as usize + 1);
        for n in 0..=n_max {
            let xs: Vec<u32> =
                wplus.iter().copied().filter(|&x| t.length(x) <= m - n).collect();
            let mut best_pair = 0;
            let mut best_sum = 0;
            for &x in &xs {
                let mut row = 0;
                for &y in &wplus {
                    let v = ext_ll_raw(kl, &wplus, x, y, n);
                    row += v;
                    if t.length(y) <= m - n && v > best_pair {
                        best_pair = v;
                    }
                }
                best_sum = best_sum.max(row);
            }
            cx.push(best_pair);
            cap_cx.push(best_sum);
        }
        (cx, cap_cx)
    };
    let (cx, cap_cx) = terms_at(l);
    let (cx1, cap1) = terms_at(l + 1);
    let (cx2, cap2) = terms_at(l + 2);
    let window = default_window(n_max as usize);
    let seq = |terms: Vec<i64>, stable: bool| -> Result<GrowthSequence, Error> {
        Ok(GrowthSequence {
            estimated_gamma: estimate_gamma(&terms, window)?,
            terms,
            window,
            truncation_l: Some(l),
            stabilized: Some(stable),
        })
    };
    let cx_stable = cx == cx1 && cx == cx2;
    let cap_stable = cap_cx == cap1 && cap_cx == cap2;
    Ok((seq(cx, cx_stable)?, seq(cap_cx, cap_stable)?))
}

/// The Corollary 5.2 upper bound: total mu-product weight of down-then-up
/// chains of n steps starting at x, over W+ elements of length <= L, with
/// the order on the realized dominant weights.
pub fn zigzag_bound(kl: &KlTable, x: u32, n: u32, l: u32) -> Result<TruncatedStat, Error> {
    require_wplus(kl, x)?;
    if l < kl.group().length(x) + n + 2 {
        return Err(Error::Truncation(format!(
            "window {l} is below l(x)+n+2 = {}",
            kl.group().length(x) + n + 2
        )));
    }
    require_window(kl, l)?;
    let t = kl.group();
    let rs = t.root_system();
    let level = rs.default_l();
    let lambda_minus = Weight(vec![-2; rs.rank()]);
    let wplus = t.wplus_indices();
    let weights: Vec<Weight> =
        wplus.iter().map(|&w| rs.dot_action(t.element(w), &lambda_minus, level)).collect();
    let pos_of: std::collections::HashMap<u32, usize> =
        wplus.iter().enumerate().map(|(i, &w)| (w, i)).collect();

    Ok(stabilize(l, |m| {
        let idx: Vec<usize> =
            (0..wplus.len()).filter(|&i| t.length(wplus[i]) <= m).collect();
        // above[i] = strictly dominance-larger js with nonzero mu, with the
        // mu value; chains may only step along such pairs.
        let mut above: Vec<Vec<(usize, i64)>> = vec![Vec::new(); wplus.len()];
        for &i in &idx {
            for &j in &idx {
                let diff = weights[j].sub(&weights[i]);
                let dominates = match rs.root_coords(&diff) {
                    Some(c) => c.iter().all(|&v| v >= 0) && c.iter().any(|&v| v > 0),
                    None => false,
                };
                if dominates {
                    let mu = kl.mu(wplus[i], wplus[j]);
                    if mu != 0 {
                        above[i].push((j, mu));
                    }
                }
            }
        }
        let x_pos = pos_of[&x];
        // Split each chain at its unique valley: desc[s][v] carries the
        // mu-weight of strict descents x -> v in s steps, asc[m][v] of
        // strict ascents out of v in m steps with free endpoint.
        let mut desc = vec![vec![0i64; wplus.len()]];
        desc[0][x_pos] = 1;
        for s in 1..=n as usize {
            let prev = &desc[s - 1];
            let mut next = vec![0i64; wplus.len()];
            for &i in &idx {
                for &(j, mu) in &above[i] {
                    next[i] += prev[j] * mu;
                }
            }
            desc.push(next);
        }
        let mut asc = vec![vec![0i64; wplus.len()]; n as usize + 1];
        for v in &idx {
            asc[0][*v] = 1;
        }
        for m_steps in 1..=n as usize {
            for &i in &idx {
                asc[m_steps][i] =
                    above[i].iter().map(|&(j, mu)| mu * asc[m_steps - 1][j]).sum();
            }
        }
        (0..=n as usize)
            .map(|s| idx.iter().map(|&v| desc[s][v] * asc[n as usize - s][v]).sum::<i64>())
            .sum()
    }))
}

/// Per-row truncated mu sums over W+, with the max (R) and the w0 row (R').
pub struct MuRowSums {
    /// (W+ element, its row sum) for every l(x) <= L, in table order.
    pub rows: Vec<(u32, TruncatedStat)>,
    pub r_estimate: Option<TruncatedStat>,
    pub rprime_estimate: Option<TruncatedStat>,
}

pub fn mu_row_sums(kl: &KlTable, l: u32) -> Result<MuRowSums, Error> {
    require_window(kl, l)?;
    let t = kl.group();
    let wplus = t.wplus_indices();
    let xs: Vec<u32> = wplus.iter().copied().filter(|&x| t.length(x) <= l).collect();
    let row = |x: u32, m: u32| -> i64 {
        wplus.iter().filter(|&&y| t.length(y) <= m && y != x).map(|&y| kl.mu(x, y)).sum()
    };
    let rows: Vec<(u32, TruncatedStat)> =
        xs.iter().map(|&x| (x, stabilize(l, |m| row(x, m)))).collect();
    let r_estimate = (!xs.is_empty())
        .then(|| stabilize(l, |m| xs.iter().map(|&x| row(x, m)).max().unwrap_or(0)));
    // w0, the longest finite element, is the W+ minimum; its length is the
    // number of positive roots.
    let rprime_estimate = wplus.first().filter(|&&w0| t.length(w0) <= l).map(|&w0| {
        debug_assert_eq!(t.length(w0), rs_positive(kl) as u32);
        stabilize(l, |m| row(w0, m))
    });
    Ok(MuRowSums { rows, r_estimate, rprime_estimate })
}

fn rs_positive(kl: &KlTable) -> usize {
    kl.group().root_system().num_positive_roots()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kl::DescentRule;
    use crate::roots::{RootSystem, RsType};
    use crate::weyl::{GroupTable, DEFAULT_MAX_ELEMENTS};

    fn kl_table(t: RsType, r: usize, affine: bool, len: u32) -> KlTable {
        let rs = RootSystem::new(t, r).unwrap();
        let table = GroupTable::generate(rs, affine, len, DEFAULT_MAX_ELEMENTS).unwrap();
        KlTable::new(table, DescentRule::SmallestIndex)
    }

    /// The unique W+ element of each length in affine A1.
    fn a1_at(kl: &KlTable, len: u32) -> u32 {
        kl.group()
            .stratum(len)
            .find(|&i| kl.group().is_wplus(i))
            .expect("one W+ element per positive length")
    }

    #[test]
    fn nabla_examples() {
        let kl = kl_table(RsType::A, 1, true, 8);
        let (x3, z1) = (a1_at(&kl, 3), a1_at(&kl, 1));
        assert_eq!(ext_l_nabla(&kl, x3, z1, 2).unwrap(), 1);
        assert_eq!(ext_l_nabla(&kl, x3, z1, 1).unwrap(), 0);
        assert_eq!(ext_l_nabla(&kl, x3, x3, 0).unwrap(), 1);
        assert!(matches!(ext_l_nabla(&kl, x3, 0, 1), Err(Error::Domain(_))));
    }

    #[test]
    fn round_trip_reconstructs_polynomials() {
        for (t, r) in [(RsType::A, 1), (RsType::A, 2)] {
            let kl = kl_table(t, r, true, 8);
            let g = kl.group();
            let wplus = g.wplus_indices();
            for &x in &wplus {
                for &z in &wplus {
                    let gap = g.length(x) as i64 - g.length(z) as i64;
                    let mut coeffs = Vec::new();
                    for n in 0..=g.length(x) {
                        let d = ext_l_nabla(&kl, x, z, n).unwrap();
                        let k = gap - n as i64;
                        if d != 0 {
                            assert!(k >= 0 && k % 2 == 0);
                            let q = (k / 2) as usize;
                            if coeffs.len() <= q {
                                coeffs.resize(q + 1, 0);
                            }
                            coeffs[q] = d;
                        }
                    }
                    assert_eq!(crate::poly::Poly::from_coeffs(coeffs), *kl.kl(z, x));
                }
            }
        }
    }

    #[test]
    fn ll_examples_and_symmetry() {
        let kl = kl_table(RsType::A, 1, true, 10);
        let at = |l| a1_at(&kl, l);
        assert_eq!(ext_l_l(&kl, at(1), at(3), 2).unwrap(), 1);
        assert_eq!(ext_l_l(&kl, at(1), at(1), 2).unwrap(), 0);
        assert_eq!(ext_l_l(&kl, at(2), at(2), 2).unwrap(), 1);
        assert_eq!(ext_l_l(&kl, at(4), at(4), 0).unwrap(), 1);

        let kl2 = kl_table(RsType::A, 2, true, 8);
        let wplus = kl2.group().wplus_indices();
        for &x in &wplus {
            for &y in &wplus {
                for n in 0..=4 {
                    let v = ext_l_l(&kl2, x, y, n).unwrap();
                    assert_eq!(v, ext_l_l(&kl2, y, x, n).unwrap());
                    let gap = kl2.group().length(x) as i64 - kl2.group().length(y) as i64;
                    if (gap - n as i64) % 2 != 0 {
                        assert_eq!(v, 0, "parity vanishing");
                    }
                }
            }
        }
    }

    #[test]
    fn sum_over_nu_examples() {
        let kl = kl_table(RsType::A, 1, true, 16);
        let s = sum_over_nu(&kl, a1_at(&kl, 5), 3, 10).unwrap();
        assert_eq!((s.value, s.stabilized), (4, true));
        let s = sum_over_nu(&kl, a1_at(&kl, 4), 0, 6).unwrap();
        assert_eq!((s.value, s.stabilized), (1, true));
        let s = sum_over_nu(&kl, a1_at(&kl, 1), 2, 5).unwrap();
        assert_eq!((s.value, s.stabilized), (1, true));
        assert!(matches!(sum_over_nu(&kl, a1_at(&kl, 5), 3, 7), Err(Error::Truncation(_))));
        assert!(matches!(sum_over_nu(&kl, a1_at(&kl, 5), 3, 15), Err(Error::Truncation(_))));
    }

    #[test]
    fn c_n_max_values() {
        let kl = kl_table(RsType::A, 1, true, 14);
        for n in 0..=10 {
            let c = c_n_max(&kl, n, 12).unwrap();
            assert_eq!(c.value, 1, "n = {n}");
        }
        let kl2 = kl_table(RsType::A, 2, true, 8);
        let c = c_n_max(&kl2, 0, 6).unwrap();
        assert_eq!((c.value, c.stabilized), (1, true));
        // Independent exhaustive scan of the same table.
        let g = kl2.group();
        let wplus = g.wplus_indices();
        for n in 0..=3 {
            let mut scan = 0;
            for &x in &wplus {
                for &y in &wplus {
                    if g.length(x) > 6 || g.length(y) > 6 {
                        continue;
                    }
                    let k = g.length(x) as i64 - g.length(y) as i64 - n as i64;
                    scan = scan.max(kl2.kl(y, x).t_coefficient(k));
                }
            }
            assert_eq!(c_n_max(&kl2, n, 6).unwrap().value, scan);
        }
    }

    #[test]
    fn cx_sequences_a1() {
        let kl = kl_table(RsType::A, 1, true, 22);
        let (cx, cap) = cx_sequences(&kl, 8, 20).unwrap();
        assert_eq!(cx.terms, vec![1; 9]);
        assert_eq!(cap.terms, (1..=9).collect::<Vec<i64>>());
        assert_eq!(cx.stabilized, Some(true));
        assert_eq!(cap.stabilized, Some(true));
        assert_eq!(cx.estimated_gamma, 1.0);
        assert!((cap.estimated_gamma - 2.0).abs() < 0.35);
    }

    #[test]
    fn zigzag_a1_small_cases() {
        let kl = kl_table(RsType::A, 1, true, 16);
        let z = |x_len, n, l| zigzag_bound(&kl, a1_at(&kl, x_len), n, l).unwrap();
        assert_eq!(z(3, 0, 10).value, 1);
        assert_eq!(z(1, 1, 10).value, 1);
        assert_eq!(z(1, 2, 10).value, 1);
        assert_eq!(z(2, 2, 10).value, 2);
        assert_eq!(z(3, 2, 10).value, 3);
        // Partner inequality on stabilized instances.
        for x_len in 1..=4 {
            for n in 0..=3 {
                let s = sum_over_nu(&kl, a1_at(&kl, x_len), n, 10).unwrap();
                let b = z(x_len, n, 10);
                if s.stabilized && b.stabilized {
                    assert!(s.value <= b.value, "X={x_len} n={n}");
                }
            }
        }
    }

    #[test]
    fn mu_rows_a1() {
        let kl = kl_table(RsType::A, 1, true, 12);
        let sums = mu_row_sums(&kl, 8).unwrap();
        let by_len: std::collections::HashMap<u32, TruncatedStat> =
            sums.rows.iter().map(|&(x, s)| (kl.group().length(x), s)).collect();
        assert_eq!(by_len[&1].value, 1, "w0 row sees only the length-2 neighbor");
        for l in 2..=7 {
            assert_eq!(by_len[&l].value, 2, "interior row at length {l}");
            assert!(by_len[&l].stabilized);
        }
        assert_eq!(by_len[&8].value, 1, "boundary row is cut off");
        assert!(!by_len[&8].stabilized);
        assert_eq!(sums.r_estimate.unwrap().value, 2);
        assert_eq!(sums.rprime_estimate.unwrap().value, 1);
        assert!(sums.rprime_estimate.unwrap().stabilized);
    }

    #[test]
    fn empty_tables_degrade_cleanly() {
        let kl = kl_table(RsType::A, 2, true, 4);
        // No W+ element fits below length 3+2 window.
        let sums = mu_row_sums(&kl, 2).unwrap();
        assert!(sums.rows.is_empty());
        assert!(sums.r_estimate.is_none());
        assert!(sums.rprime_estimate.is_none());
    }
}
