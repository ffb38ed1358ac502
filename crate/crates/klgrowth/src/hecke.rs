//! Canonical-basis oracle for KL polynomials, independent of the descent
//! recursion in [`crate::kl`].
//!
//! Works in the Hecke algebra over Z[v, v^-1] with H_s^2 = 1 + (v^-1 - v)H_s
//! and b_s = H_s + v. The basis element b_w is built by induction on length:
//! b_{ws} b_s is bar-invariant, equals b_w plus integer multiples of lower
//! b_y, and those integers are the constant v-terms of its H-coefficients.
//! Removing them from the top down leaves the unique bar-invariant element
//! with unitriangular coefficients in vZ[v], and the KL polynomial is read
//! off through h_{y,w} = v^(l(w)-l(y)) P_{y,w}(v^-2).
//!
//! Slow and dense on purpose: no mu-lists, no descent choices, nothing
//! shared with the production path beyond the group table itself.

use crate::poly::Poly;
use crate::weyl::GroupTable;
use std::collections::{BTreeMap, HashMap};

/// Laurent polynomial in v over Z; no stored zeros.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
struct Lau(BTreeMap<i32, i64>);

impl Lau {
    fn one() -> Lau {
        Lau(BTreeMap::from([(0, 1)]))
    }

    fn coeff(&self, e: i32) -> i64 {
        self.0.get(&e).copied().unwrap_or(0)
    }

    fn add_scaled_shifted(&mut self, other: &Lau, scale: i64, shift: i32) {
        for (&e, &c) in &other.0 {
            let entry = self.0.entry(e + shift).or_insert(0);
            *entry += scale * c;
            if *entry == 0 {
                self.0.remove(&(e + shift));
            }
        }
    }

    fn is_zero(&self) -> bool {
        self.0.is_empty()
    }
}

pub struct HeckeOracle<'a> {
    table: &'a GroupTable,
    /// basis[w] is b_w written in the H basis: support index -> coefficient.
    basis: Vec<HashMap<u32, Lau>>,
}

impl<'a> HeckeOracle<'a> {
    /// Build b_w for every element of the table, in index (length) order.
    pub fn build(table: &'a GroupTable) -> HeckeOracle<'a> {
        let name_to_pos: HashMap<u8, usize> =
            (0..table.num_gens()).map(|p| (table.gen_name(p), p)).collect();
        let mut basis: Vec<HashMap<u32, Lau>> = Vec::with_capacity(table.len());
        basis.push(HashMap::from([(0, Lau::one())]));
        for w in 1..table.len() as u32 {
            let s_pos = name_to_pos[table.word(w).last().expect("nonempty word")];
            let u = table.right_mul(w, s_pos).expect("prefix stays in the table");
            debug_assert_eq!(table.length(u) + 1, table.length(w));

            // c = b_u (H_s + v) in the H basis.
            let mut c: HashMap<u32, Lau> = HashMap::new();
            for (&y, f) in &basis[u as usize] {
                let ys = table
                    .right_mul(y, s_pos)
                    .expect("support of b_u is below u, so ys stays in the table");
                c.entry(ys).or_default().add_scaled_shifted(f, 1, 0);
                let down = table.length(ys) < table.length(y);
                let t = c.entry(y).or_default();
                t.add_scaled_shifted(f, 1, 1);
                if down {
                    t.add_scaled_shifted(f, 1, -1);
                    t.add_scaled_shifted(f, -1, 1);
                }
            }
            c.retain(|_, f| !f.is_zero());

            // Strip lower canonical terms from the top stratum down; the
            // correction below length k never disturbs length >= k.
            for len in (0..table.length(w)).rev() {
                for y in table.stratum(len) {
                    let m = c.get(&y).map_or(0, |f| f.coeff(0));
                    if m == 0 {
                        continue;
                    }
                    for (&z, f) in &basis[y as usize] {
                        c.entry(z).or_default().add_scaled_shifted(f, -m, 0);
                    }
                    c.retain(|_, f| !f.is_zero());
                }
            }

            assert_eq!(c.get(&w), Some(&Lau::one()), "unitriangularity at {w}");
            for (&y, f) in &c {
                assert!(
                    y == w && f == &Lau::one()
                        || f.0.keys().all(|&e| e > 0),
                    "coefficient of {y} in b_{w} escapes vZ[v]"
                );
            }
            basis.push(c);
        }
        HeckeOracle { table, basis }
    }

    /// P_{y,w} recovered from b_w; zero when y is outside the support.
    pub fn kl_polynomial(&self, y: u32, w: u32) -> Poly {
        let Some(f) = self.basis[w as usize].get(&y) else {
            return Poly::zero();
        };
        let gap = self.table.length(w) as i32 - self.table.length(y) as i32;
        let mut coeffs = Vec::new();
        for (&e, &c) in &f.0 {
            let twice_k = gap - e;
            assert!(twice_k >= 0 && twice_k % 2 == 0, "stray v-power {e} in pair ({y},{w})");
            let k = (twice_k / 2) as usize;
            if coeffs.len() <= k {
                coeffs.resize(k + 1, 0);
            }
            coeffs[k] = c;
        }
        Poly::from_coeffs(coeffs)
    }
}
