//! Weight multiplicities of symmetric powers of the nilpotent radical by
//! exact partition counting: the sigma-weight space of S^m(u*) has dimension
//! equal to the number of multisets of exactly m positive roots summing to
//! sigma. On top of the counting DP sit the max-multiplicity sweep and its
//! growth estimate, and the adjacent-triple witness construction that gives
//! the polynomial lower bound dim S^m(u*)_tau >= d m^(r-2); only the
//! explicit (n+1)^|T| witness count is checked here, the constant
//! d = (1/(3|T|))^(r-2) is never materialized.

use std::collections::HashSet;

use crate::error::Error;
use crate::growth::{default_window, estimate_gamma, GrowthSequence};
use crate::roots::RootSystem;

/// Total DP cells (box volume times part-count layers) the max sweep will
/// allocate before giving up.
const SWEEP_CELL_CAP: usize = 1 << 27;

/// A partition-count question: multisets of exactly `m` positive roots
/// summing to `sigma` (simple-root coordinates).
#[derive(Clone, Debug)]
pub struct PartitionCountQuery {
    pub m: u32,
    pub sigma: Vec<i64>,
}

/// Adjacent triples (alpha, beta, gamma) of distinct simple roots, beta
/// linked to both ends, oriented so gamma follows alpha in the chosen order.
#[derive(Clone, Debug)]
pub struct TripleSet {
    /// Permutation of the simple-root indices giving the linear order on Pi.
    pub ordering: Vec<usize>,
    /// (alpha, beta, gamma) as simple-root indices.
    pub triples: Vec<(usize, usize, usize)>,
    /// Sum over triples of alpha + 2 beta + gamma, simple-root coordinates.
    pub tau_phi: Vec<i64>,
}

#[derive(Clone, Debug)]
pub struct Lemma34Witness {
    pub n: u32,
    /// 3 n |T| parts.
    pub m: u32,
    /// n tau_phi, simple-root coordinates.
    pub target: Vec<i64>,
    pub count: u64,
    /// (n+1)^|T|.
    pub bound: u64,
    /// How many of the constructed partitions survive deduplication.
    pub distinct_partitions: u64,
    /// distinct_partitions == bound. Holds in chain diagrams, where the
    /// linking-root counts recover the choice vector; around a branch node
    /// those counts are rank-deficient and choices collide, e.g. in D4 with
    /// n = 1 the vectors (1,0,1) and (0,1,0) yield the same multiset.
    pub distinct: bool,
}

fn lin_index(strides: &[usize], v: &[i64]) -> usize {
    v.iter().zip(strides).map(|(&c, &s)| c as usize * s).sum()
}

/// Dense exactly-m-parts counting over the box 0 <= sigma_i <= bounds_i:
/// layers[p][cell] = multisets of p positive roots summing to the cell.
/// Roots are folded in one at a time in height order, so within one root the
/// layer-(p-1) value already includes earlier copies of the same root.
fn exact_part_layers(
    rs: &RootSystem,
    m: u32,
    bounds: &[i64],
    cap: Option<usize>,
) -> Result<Vec<Vec<u64>>, Error> {
    let rank = rs.rank();
    debug_assert_eq!(bounds.len(), rank);
    let dims: Vec<usize> = bounds.iter().map(|&b| b.max(0) as usize + 1).collect();
    let volume = dims
        .iter()
        .try_fold(1usize, |a, &d| a.checked_mul(d))
        .filter(|v| cap.is_none_or(|c| v.checked_mul(m as usize + 1).is_some_and(|t| t <= c)))
        .ok_or_else(|| {
            Error::ResourceCap(format!(
                "partition DP over {} needs more than {SWEEP_CELL_CAP} cells",
                rs.label()
            ))
        })?;
    let mut strides = vec![1usize; rank];
    for k in (0..rank.saturating_sub(1)).rev() {
        strides[k] = strides[k + 1] * dims[k + 1];
    }
    let mut layers = vec![vec![0u64; volume]; m as usize + 1];
    layers[0][0] = 1;
    for root in rs.positive_roots() {
        if root.iter().zip(bounds).any(|(&r, &b)| r > b) {
            continue;
        }
        let root_lin = lin_index(&strides, root);
        for p in 1..=m as usize {
            let (lo, hi) = layers.split_at_mut(p);
            let (prev, cur) = (&lo[p - 1], &mut hi[0]);
            let mut idx = root.clone();
            'cells: loop {
                let li = lin_index(&strides, &idx);
                cur[li] += prev[li - root_lin];
                let mut k = rank;
                while k > 0 {
                    k -= 1;
                    if idx[k] < bounds[k] {
                        idx[k] += 1;
                        continue 'cells;
                    }
                    idx[k] = root[k];
                }
                break;
            }
        }
    }
    Ok(layers)
}

/// dim S^m(u*)_sigma: multisets of exactly m positive roots summing to
/// sigma. Cost is the box volume prod (sigma_i + 1) times m, so callers own
/// the scale of what they ask for.
pub fn weight_multiplicity(rs: &RootSystem, m: u32, sigma: &[i64]) -> u64 {
    assert_eq!(sigma.len(), rs.rank(), "sigma must have one coordinate per simple root");
    if sigma.iter().any(|&c| c < 0) {
        return 0;
    }
    let height: i64 = sigma.iter().sum();
    let top_height: i64 = rs.positive_roots().last().map(|r| r.iter().sum()).unwrap_or(0);
    if height < m as i64 || height > m as i64 * top_height {
        return 0;
    }
    let layers = exact_part_layers(rs, m, sigma, None).expect("uncapped DP cannot hit the guard");
    layers[m as usize][layers[m as usize].len() - 1]
}

/// Max of weight_multiplicity(rs, m, -) over all sigma, with the
/// lexicographically least maximizing sigma. The search box is m times the
/// highest root, which dominates every positive root coordinatewise.
pub fn max_multiplicity(rs: &RootSystem, m: u32) -> Result<(Vec<i64>, u64), Error> {
    let layers = sweep_layers(rs, m)?;
    Ok(argmax_cell(rs, m, &layers[m as usize]))
}

fn sweep_layers(rs: &RootSystem, m: u32) -> Result<Vec<Vec<u64>>, Error> {
    let theta = rs.positive_roots().last().expect("irreducible system has roots");
    let bounds: Vec<i64> = theta.iter().map(|&c| c * m as i64).collect();
    exact_part_layers(rs, m, &bounds, Some(SWEEP_CELL_CAP))
}

/// Sum of weight_multiplicity(rs, m, -) over all sigma. Every size-m
/// multiset of positive roots lands in the sweep box, so this must equal
/// the multiset count C(|Phi+| + m - 1, m); exposed for cross-checks.
pub fn multiplicity_total(rs: &RootSystem, m: u32) -> Result<u64, Error> {
    let layers = sweep_layers(rs, m)?;
    Ok(layers[m as usize].iter().sum())
}

/// Row-major cell order is lexicographic order on the coordinates, so the
/// first strict max is the lex-least maximizer.
fn argmax_cell(rs: &RootSystem, m: u32, layer: &[u64]) -> (Vec<i64>, u64) {
    let theta = rs.positive_roots().last().expect("irreducible system has roots");
    let mut best = (0usize, 0u64);
    for (i, &v) in layer.iter().enumerate() {
        if v > best.1 {
            best = (i, v);
        }
    }
    let mut coords = vec![0i64; rs.rank()];
    let mut rem = best.0;
    for k in (0..rs.rank()).rev() {
        let d = (theta[k] * m as i64) as usize + 1;
        coords[k] = (rem % d) as i64;
        rem /= d;
    }
    (coords, best.1)
}

/// All (alpha, beta, gamma) with distinct simple roots, beta adjacent to
/// both alpha and gamma, gamma after alpha in the given linear order on Pi
/// (default: diagram left to right, i.e. index order).
pub fn build_triples(rs: &RootSystem, ordering: Option<&[usize]>) -> Result<TripleSet, Error> {
    let rank = rs.rank();
    if rank < 3 {
        return Err(Error::Domain(format!(
            "adjacent triples need rank at least 3, {} has rank {rank}",
            rs.label()
        )));
    }
    let ordering: Vec<usize> = match ordering {
        Some(o) => o.to_vec(),
        None => (0..rank).collect(),
    };
    let mut pos = vec![usize::MAX; rank];
    for (p, &s) in ordering.iter().enumerate() {
        if s >= rank || pos[s] != usize::MAX {
            return Err(Error::BadArgument(format!(
                "ordering must be a permutation of 0..{rank}"
            )));
        }
        pos[s] = p;
    }
    if ordering.len() != rank {
        return Err(Error::BadArgument(format!("ordering must be a permutation of 0..{rank}")));
    }
    let cartan = rs.cartan();
    let mut triples = Vec::new();
    let mut tau_phi = vec![0i64; rank];
    for b in 0..rank {
        let nbrs: Vec<usize> = (0..rank).filter(|&i| i != b && cartan[b][i] != 0).collect();
        for i in 0..nbrs.len() {
            for j in i + 1..nbrs.len() {
                let (a, g) = if pos[nbrs[j]] > pos[nbrs[i]] {
                    (nbrs[i], nbrs[j])
                } else {
                    (nbrs[j], nbrs[i])
                };
                triples.push((a, b, g));
                tau_phi[a] += 1;
                tau_phi[b] += 2;
                tau_phi[g] += 1;
            }
        }
    }
    // One triple per two-step diagram path: r-2 when the diagram is a chain,
    // r-1 when it has a branch node.
    let expected = match rs.rtype() {
        crate::roots::RsType::D | crate::roots::RsType::E => rank - 1,
        _ => rank - 2,
    };
    assert_eq!(triples.len(), expected, "triple count in {}", rs.label());
    Ok(TripleSet { ordering, triples, tau_phi })
}

/// The explicit witness family for the lower bound: m = 3n|T| parts
/// targeting n tau_phi. Each triple contributes n blocks, each block either
/// {alpha+beta, beta, gamma} or {alpha, beta, beta+gamma}; both sum to
/// alpha + 2 beta + gamma, so every choice vector lands on the target. The
/// (n+1)^|T| resulting multisets are deduplicated and the surviving number
/// reported; the total count is asserted to dominate the full bound, which
/// holds even where choice vectors collide because the target admits
/// partitions outside the witness family.
pub fn lemma34_witness(rs: &RootSystem, n: u32) -> Result<Lemma34Witness, Error> {
    let ts = build_triples(rs, None)?;
    let t = ts.triples.len();
    let m = 3 * n * t as u32;
    let target: Vec<i64> = ts.tau_phi.iter().map(|&c| c * n as i64).collect();
    let count = weight_multiplicity(rs, m, &target);
    let bound = (n as u64 + 1).checked_pow(t as u32).expect("witness bound fits u64");

    let rank = rs.rank();
    let unit = |s: usize| {
        let mut v = vec![0i64; rank];
        v[s] = 1;
        v
    };
    let pair = |s: usize, u: usize| {
        let mut v = vec![0i64; rank];
        v[s] = 1;
        v[u] += 1;
        v
    };
    let mut seen: HashSet<Vec<Vec<i64>>> = HashSet::new();
    let mut digits = vec![0u32; t];
    loop {
        let mut parts: Vec<Vec<i64>> = Vec::with_capacity(m as usize);
        for (i, &(a, b, g)) in ts.triples.iter().enumerate() {
            for _ in 0..digits[i] {
                parts.push(pair(a, b));
                parts.push(unit(b));
                parts.push(unit(g));
            }
            for _ in digits[i]..n {
                parts.push(unit(a));
                parts.push(unit(b));
                parts.push(pair(b, g));
            }
        }
        parts.sort();
        seen.insert(parts);
        let mut k = 0;
        while k < t && digits[k] == n {
            digits[k] = 0;
            k += 1;
        }
        if k == t {
            break;
        }
        digits[k] += 1;
    }
    let distinct_partitions = seen.len() as u64;
    let distinct = distinct_partitions == bound;
    assert!(count >= bound, "witness family undercounts {}: {count} < {bound}", rs.label());
    Ok(Lemma34Witness { n, m, target, count, bound, distinct_partitions, distinct })
}

/// Max multiplicities of S^n(u*) for n = 0..N with the log-log growth fit.
pub fn s_phi_estimate(rs: &RootSystem, n_max: u32) -> Result<GrowthSequence, Error> {
    if n_max < 8 {
        return Err(Error::BadArgument(format!(
            "growth estimation needs at least 8 terms, got N = {n_max}"
        )));
    }
    let layers = sweep_layers(rs, n_max)?;
    let terms: Vec<i64> = layers
        .iter()
        .map(|layer| {
            let mx = layer.iter().copied().max().unwrap_or(0);
            i64::try_from(mx).expect("multiplicity fits i64")
        })
        .collect();
    let window = default_window(n_max as usize);
    Ok(GrowthSequence {
        estimated_gamma: estimate_gamma(&terms, window)?,
        terms,
        window,
        truncation_l: None,
        stabilized: None,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::roots::{RootSystem, RsType};

    fn rs(t: RsType, r: usize) -> RootSystem {
        RootSystem::new(t, r).unwrap()
    }

    /// Reference count by direct multiset enumeration with pruning.
    fn brute_count(rs: &RootSystem, m: u32, sigma: &[i64]) -> u64 {
        fn rec(roots: &[Vec<i64>], start: usize, left: u32, rem: &mut [i64], acc: &mut u64) {
            if left == 0 {
                if rem.iter().all(|&v| v == 0) {
                    *acc += 1;
                }
                return;
            }
            for i in start..roots.len() {
                if roots[i].iter().zip(rem.iter()).all(|(&r, &v)| v >= r) {
                    for (k, &r) in roots[i].iter().enumerate() {
                        rem[k] -= r;
                    }
                    rec(roots, i, left - 1, rem, acc);
                    for (k, &r) in roots[i].iter().enumerate() {
                        rem[k] += r;
                    }
                }
            }
        }
        let mut rem = sigma.to_vec();
        let mut acc = 0;
        rec(rs.positive_roots(), 0, m, &mut rem, &mut acc);
        acc
    }

    #[test]
    fn zero_and_rank_one_counts() {
        let a1 = rs(RsType::A, 1);
        assert_eq!(weight_multiplicity(&a1, 0, &[0]), 1);
        assert_eq!(weight_multiplicity(&a1, 7, &[7]), 1);
        assert_eq!(weight_multiplicity(&a1, 7, &[6]), 0);
        assert_eq!(weight_multiplicity(&a1, 0, &[1]), 0);
        let b2 = rs(RsType::B, 2);
        assert_eq!(weight_multiplicity(&b2, 0, &[0, 0]), 1);
        assert_eq!(weight_multiplicity(&b2, 2, &[-1, 3]), 0);
        assert_eq!(weight_multiplicity(&b2, 3, &[1, 1]), 0, "height below part count");
        assert_eq!(weight_multiplicity(&b2, 1, &[2, 4]), 0, "height above m times highest root");
    }

    #[test]
    fn b2_diagonal_family() {
        let b2 = rs(RsType::B, 2);
        for n in 0..=12u32 {
            let got = weight_multiplicity(&b2, n, &[n as i64, n as i64]);
            assert_eq!(got, n as u64 / 2 + 1, "n = {n}");
        }
    }

    #[test]
    fn a3_counts_match_enumeration() {
        let a3 = rs(RsType::A, 3);
        assert_eq!(weight_multiplicity(&a3, 3, &[1, 2, 1]), 2);
        for m in 0..=4u32 {
            for s1 in 0..=3i64 {
                for s2 in 0..=3i64 {
                    for s3 in 0..=3i64 {
                        let sigma = [s1, s2, s3];
                        assert_eq!(
                            weight_multiplicity(&a3, m, &sigma),
                            brute_count(&a3, m, &sigma),
                            "m={m} sigma={sigma:?}"
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn totals_are_stars_and_bars() {
        fn binom(n: u64, k: u64) -> u64 {
            (0..k).fold(1u64, |acc, i| acc * (n - i) / (i + 1))
        }
        let systems = [
            rs(RsType::A, 1),
            rs(RsType::A, 2),
            rs(RsType::B, 2),
            rs(RsType::G, 2),
            rs(RsType::A, 3),
            rs(RsType::B, 3),
            rs(RsType::C, 3),
            rs(RsType::A, 4),
            rs(RsType::B, 4),
            rs(RsType::C, 4),
            rs(RsType::D, 4),
            rs(RsType::F, 4),
        ];
        for sys in &systems {
            for m in 0..=6u32 {
                let total = multiplicity_total(sys, m).unwrap();
                let np = sys.num_positive_roots() as u64;
                assert_eq!(total, binom(np + m as u64 - 1, m as u64), "{} m={m}", sys.label());
            }
        }
    }

    #[test]
    fn max_multiplicity_examples() {
        let a1 = rs(RsType::A, 1);
        assert_eq!(max_multiplicity(&a1, 5).unwrap(), (vec![5], 1));
        assert_eq!(max_multiplicity(&a1, 0).unwrap(), (vec![0], 1));
        let a2 = rs(RsType::A, 2);
        for m in 0..=6 {
            assert_eq!(max_multiplicity(&a2, m).unwrap().1, 1, "m = {m}");
        }
        let b2 = rs(RsType::B, 2);
        let (sigma, count) = max_multiplicity(&b2, 4).unwrap();
        assert_eq!(count, 3);
        assert_eq!(weight_multiplicity(&b2, 4, &sigma), 3);
        assert_eq!(max_multiplicity(&b2, 4).unwrap(), (sigma, count), "deterministic");
    }

    #[test]
    fn oversized_sweep_is_capped() {
        let e8 = rs(RsType::E, 8);
        assert!(matches!(max_multiplicity(&e8, 6), Err(Error::ResourceCap(_))));
        assert!(matches!(s_phi_estimate(&e8, 10), Err(Error::ResourceCap(_))));
    }

    #[test]
    fn triples_by_type() {
        let a3 = rs(RsType::A, 3);
        let ts = build_triples(&a3, None).unwrap();
        assert_eq!(ts.triples, vec![(0, 1, 2)]);
        assert_eq!(ts.tau_phi, vec![1, 2, 1]);

        let a4 = rs(RsType::A, 4);
        assert_eq!(build_triples(&a4, None).unwrap().tau_phi, vec![1, 3, 3, 1]);

        for r in 3..=8 {
            for t in [RsType::A, RsType::B, RsType::C] {
                let ts = build_triples(&rs(t, r), None).unwrap();
                assert_eq!(ts.triples.len(), r - 2);
            }
            if r >= 4 {
                assert_eq!(build_triples(&rs(RsType::D, r), None).unwrap().triples.len(), r - 1);
            }
            if r >= 6 {
                assert_eq!(build_triples(&rs(RsType::E, r), None).unwrap().triples.len(), r - 1);
            }
        }
        assert_eq!(build_triples(&rs(RsType::F, 4), None).unwrap().triples.len(), 2);
        assert!(matches!(build_triples(&rs(RsType::A, 2), None), Err(Error::Domain(_))));
        assert!(matches!(
            build_triples(&a3, Some(&[0, 0, 1])),
            Err(Error::BadArgument(_))
        ));
    }

    #[test]
    fn ordering_flips_orientation_not_tau() {
        let a3 = rs(RsType::A, 3);
        let rev = build_triples(&a3, Some(&[2, 1, 0])).unwrap();
        assert_eq!(rev.triples, vec![(2, 1, 0)]);
        assert_eq!(rev.tau_phi, vec![1, 2, 1]);
    }

    #[test]
    fn witness_families() {
        let a3 = rs(RsType::A, 3);
        let w = lemma34_witness(&a3, 1).unwrap();
        assert_eq!((w.m, w.count, w.bound), (3, 2, 2));
        assert_eq!(w.target, vec![1, 2, 1]);
        let w0 = lemma34_witness(&a3, 0).unwrap();
        assert_eq!((w0.m, w0.count, w0.bound), (0, 1, 1));

        let a4 = rs(RsType::A, 4);
        let w = lemma34_witness(&a4, 1).unwrap();
        assert_eq!((w.m, w.bound), (6, 4));
        assert!(w.count >= w.bound);
        assert_eq!(w.count, brute_count(&a4, 6, &[1, 3, 3, 1]));
    }

    #[test]
    fn witness_distinctness_in_chain_diagrams() {
        for (t, r) in [(RsType::A, 3), (RsType::A, 4), (RsType::B, 3)] {
            let sys = rs(t, r);
            for n in 0..=3 {
                let w = lemma34_witness(&sys, n).unwrap();
                assert!(w.distinct, "{} n={n}", sys.label());
                assert!(w.count >= w.bound, "{} n={n}", sys.label());
            }
        }
    }

    #[test]
    fn branch_node_collapses_witness_choices() {
        // Around the D4 branch node the linking-root counts determine only
        // two of the three choices, so the distinct images form the hexagon
        // 3n^2+3n+1 rather than the full (n+1)^3 cube.
        let d4 = rs(RsType::D, 4);
        for n in 0..=3u32 {
            let w = lemma34_witness(&d4, n).unwrap();
            assert_eq!(w.distinct_partitions, (3 * n * n + 3 * n + 1) as u64, "n={n}");
            assert_eq!(w.distinct, n == 0, "n={n}");
            assert!(w.count >= w.bound, "n={n}");
        }
    }

    #[test]
    fn rank_one_and_two_growth() {
        let g = s_phi_estimate(&rs(RsType::A, 1), 20).unwrap();
        assert!(g.terms.iter().all(|&t| t == 1));
        assert!((g.estimated_gamma - 1.0).abs() < 1e-9);
        let g = s_phi_estimate(&rs(RsType::A, 2), 20).unwrap();
        assert!(g.terms.iter().all(|&t| t == 1));
        assert!((g.estimated_gamma - 1.0).abs() < 1e-9);
        assert!(matches!(s_phi_estimate(&rs(RsType::A, 1), 7), Err(Error::BadArgument(_))));
    }

    #[test]
    fn b2_growth_is_near_two() {
        let g = s_phi_estimate(&rs(RsType::B, 2), 40).unwrap();
        for (n, &t) in g.terms.iter().enumerate() {
            assert!(t >= n as i64 / 2 + 1, "diagonal family is a lower bound at n={n}");
        }
        assert!(g.estimated_gamma >= 1.7, "gamma = {}", g.estimated_gamma);
    }

    #[test]
    fn g2_growth_is_near_four() {
        let g = s_phi_estimate(&rs(RsType::G, 2), 40).unwrap();
        assert!(g.estimated_gamma >= 3.5, "gamma = {}", g.estimated_gamma);
    }
}
