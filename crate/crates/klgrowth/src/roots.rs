//! Irreducible root systems of types A through G, built from Cartan matrices.
//!
//! Roots live in simple-root coordinates (integer vectors), weights in
//! fundamental-weight coordinates. Short roots are normalized to squared
//! length 2, so all inner products between roots are integers; the only
//! genuinely rational object is the inverse Cartan matrix used to convert
//! weights back to root coordinates.

use crate::error::Error;
use num_rational::Ratio;
use num_traits::{One, Zero};
use std::fmt;

#[derive(Clone, Copy, PartialEq, Eq, Debug, Hash)]
pub enum RsType {
    A,
    B,
    C,
    D,
    E,
    F,
    G,
}

impl RsType {
    pub fn parse(s: &str) -> Result<RsType, Error> {
        match s.trim().to_ascii_uppercase().as_str() {
            "A" => Ok(RsType::A),
            "B" => Ok(RsType::B),
            "C" => Ok(RsType::C),
            "D" => Ok(RsType::D),
            "E" => Ok(RsType::E),
            "F" => Ok(RsType::F),
            "G" => Ok(RsType::G),
            other => Err(Error::BadArgument(format!("unknown type {other:?}"))),
        }
    }

    pub fn letter(self) -> char {
        match self {
            RsType::A => 'A',
            RsType::B => 'B',
            RsType::C => 'C',
            RsType::D => 'D',
            RsType::E => 'E',
            RsType::F => 'F',
            RsType::G => 'G',
        }
    }
}

/// An integral weight in fundamental-weight coordinates.
#[derive(Clone, PartialEq, Eq, Debug, Hash)]
pub struct Weight(pub Vec<i64>);

impl Weight {
    pub fn zero(rank: usize) -> Weight {
        Weight(vec![0; rank])
    }

    pub fn coords(&self) -> &[i64] {
        &self.0
    }

    pub fn add(&self, other: &Weight) -> Weight {
        Weight(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn sub(&self, other: &Weight) -> Weight {
        Weight(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }

    pub fn neg(&self) -> Weight {
        Weight(self.0.iter().map(|a| -a).collect())
    }

    pub fn scale(&self, c: i64) -> Weight {
        Weight(self.0.iter().map(|a| a * c).collect())
    }
}

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|c| c.to_string()).collect();
        write!(f, "{}", parts.join(" "))
    }
}

#[derive(Clone)]
pub struct RootSystem {
    rtype: RsType,
    rank: usize,
    /// cartan[i][j] = pairing of alpha_j with the coroot of alpha_i.
    cartan: Vec<Vec<i64>>,
    /// Half squared lengths of the simple roots (1, 2 or 3).
    d: Vec<i64>,
    /// Gram matrix (alpha_i, alpha_j), kept rational for exact division.
    gram: Vec<Vec<Ratio<i64>>>,
    cartan_inv: Vec<Vec<Ratio<i64>>>,
    /// Positive roots in simple-root coordinates, sorted by (height, coords).
    positive: Vec<Vec<i64>>,
    norms: Vec<i64>,
    /// (rho, alpha^vee) for each positive root.
    rho_pairings: Vec<i64>,
    /// Maximal short root, simple-root coordinates.
    alpha0: Vec<i64>,
    coxeter_number: i64,
}

impl RootSystem {
    pub fn new(rtype: RsType, rank: usize) -> Result<RootSystem, Error> {
        let valid = match rtype {
            RsType::A => rank >= 1,
            RsType::B | RsType::C => rank >= 2,
            RsType::D => rank >= 4,
            RsType::E => (6..=8).contains(&rank),
            RsType::F => rank == 4,
            RsType::G => rank == 2,
        };
        if !valid {
            return Err(Error::InvalidRootSystem(format!(
                "{}{} is not an irreducible type",
                rtype.letter(),
                rank
            )));
        }

        let (edges, d) = diagram(rtype, rank);
        let mut cartan = vec![vec![0i64; rank]; rank];
        for i in 0..rank {
            cartan[i][i] = 2;
        }
        // For adjacent simple roots (alpha_i, alpha_j) = -max(d_i, d_j), hence
        // <alpha_j, alpha_i^vee> = -max(d_i, d_j)/d_i.
        for &(i, j) in &edges {
            let m = d[i].max(d[j]);
            cartan[i][j] = -m / d[i];
            cartan[j][i] = -m / d[j];
        }

        let gram: Vec<Vec<Ratio<i64>>> = (0..rank)
            .map(|i| (0..rank).map(|j| Ratio::from_integer(d[i] * cartan[i][j])).collect())
            .collect();
        let cartan_inv = invert(&cartan).ok_or_else(|| {
            Error::InvalidRootSystem(format!("singular Cartan matrix for {}{}", rtype.letter(), rank))
        })?;

        let positive = positive_roots_by_closure(&cartan);
        let norms: Vec<i64> = positive.iter().map(|c| norm2(&gram, c)).collect();
        let rho_pairings: Vec<i64> = positive
            .iter()
            .zip(&norms)
            .map(|(c, &n2)| {
                // (rho, alpha^vee) = 2 (rho, alpha) / (alpha, alpha), and
                // (rho, alpha_j) = d_j.
                let twice: i64 = 2 * c.iter().zip(&d).map(|(cj, dj)| cj * dj).sum::<i64>();
                assert!(twice % n2 == 0, "coroot pairing of rho must be integral");
                twice / n2
            })
            .collect();

        // The maximal short root is the unique dominant root of squared length 2.
        let mut alpha0 = None;
        for (idx, c) in positive.iter().enumerate() {
            if norms[idx] != 2 {
                continue;
            }
            let dominant = (0..rank).all(|i| (0..rank).map(|j| cartan[i][j] * c[j]).sum::<i64>() >= 0);
            if dominant {
                assert!(alpha0.is_none(), "dominant short root must be unique");
                alpha0 = Some(idx);
            }
        }
        let alpha0_idx = alpha0.expect("every irreducible system has a dominant short root");
        let coxeter_number = rho_pairings[alpha0_idx] + 1;
        let alpha0 = positive[alpha0_idx].clone();

        Ok(RootSystem {
            rtype,
            rank,
            cartan,
            d,
            gram,
            cartan_inv,
            positive,
            norms,
            rho_pairings,
            alpha0,
            coxeter_number,
        })
    }

    pub fn rtype(&self) -> RsType {
        self.rtype
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    /// Identity string such as "A1" or "E8".
    pub fn label(&self) -> String {
        format!("{}{}", self.rtype.letter(), self.rank)
    }

    pub fn cartan(&self) -> &[Vec<i64>] {
        &self.cartan
    }

    pub fn positive_roots(&self) -> &[Vec<i64>] {
        &self.positive
    }

    pub fn num_positive_roots(&self) -> usize {
        self.positive.len()
    }

    pub fn root_norm2(&self, idx: usize) -> i64 {
        self.norms[idx]
    }

    pub fn is_short(&self, idx: usize) -> bool {
        self.norms[idx] == 2
    }

    /// (rho, alpha^vee) for the idx-th positive root.
    pub fn rho_pairing(&self, idx: usize) -> i64 {
        self.rho_pairings[idx]
    }

    pub fn alpha0(&self) -> &[i64] {
        &self.alpha0
    }

    pub fn coxeter_number(&self) -> i64 {
        self.coxeter_number
    }

    pub fn rho(&self) -> Weight {
        Weight(vec![1; self.rank])
    }

    /// Inner product of two vectors given in simple-root coordinates.
    pub fn inner(&self, a: &[i64], b: &[i64]) -> Ratio<i64> {
        let mut acc = Ratio::zero();
        for i in 0..self.rank {
            if a[i] == 0 {
                continue;
            }
            for j in 0..self.rank {
                if b[j] != 0 {
                    acc += self.gram[i][j] * Ratio::from_integer(a[i] * b[j]);
                }
            }
        }
        acc
    }

    /// Pairing (v, alpha^vee) of a root-coordinate vector with the coroot of
    /// the given root; exact and integral.
    pub fn root_coroot_pairing(&self, v: &[i64], root: &[i64]) -> i64 {
        let n2 = self.inner(root, root);
        let p = Ratio::from_integer(2) * self.inner(v, root) / n2;
        assert!(p.is_integer(), "coroot pairing must be integral");
        p.to_integer()
    }

    /// Fundamental coordinates of a root-lattice vector.
    pub fn weight_from_root_coords(&self, c: &[i64]) -> Weight {
        let f = (0..self.rank)
            .map(|i| (0..self.rank).map(|j| self.cartan[i][j] * c[j]).sum())
            .collect();
        Weight(f)
    }

    /// Simple-root coordinates of a weight, when it lies in the root lattice.
    pub fn root_coords(&self, w: &Weight) -> Option<Vec<i64>> {
        let mut out = Vec::with_capacity(self.rank);
        for row in &self.cartan_inv {
            let mut acc = Ratio::zero();
            for (j, f) in w.0.iter().enumerate() {
                acc += row[j] * Ratio::from_integer(*f);
            }
            if !acc.is_integer() {
                return None;
            }
            out.push(acc.to_integer());
        }
        Some(out)
    }

    pub fn is_dominant(&self, w: &Weight) -> bool {
        w.0.iter().all(|&c| c >= 0)
    }

    /// Pairing (lambda, alpha^vee) of a weight with the coroot of a positive
    /// root given in simple-root coordinates. Always an integer.
    pub fn coroot_pairing(&self, w: &Weight, root: &[i64]) -> i64 {
        // (varpi_i, alpha_j) = d_j delta_ij, so (lambda, alpha) = sum f_j c_j d_j.
        let n2 = self.inner(root, root);
        let num: i64 = w.0.iter().zip(root).zip(&self.d).map(|((f, c), dj)| f * c * dj).sum();
        let p = Ratio::from_integer(2 * num) / n2;
        assert!(p.is_integer(), "coroot pairing must be integral");
        p.to_integer()
    }

    /// The dot action w.x = w(x+rho) - rho, with the translation part of the
    /// affine element scaled by l (the transport s_{alpha,n} -> s_{alpha,nl}).
    pub fn dot_action(&self, elt: &crate::weyl::AffineElement, lambda: &Weight, l: i64) -> Weight {
        let r = self.rank;
        let shifted = lambda.add(&self.rho());
        // Rational simple-root coordinates of lambda + rho.
        let c: Vec<Ratio<i64>> = (0..r)
            .map(|i| {
                let mut acc = Ratio::zero();
                for (j, f) in shifted.0.iter().enumerate() {
                    acc += self.cartan_inv[i][j] * Ratio::from_integer(*f);
                }
                acc
            })
            .collect();
        // Linear part, then the scaled translation.
        let mut moved: Vec<Ratio<i64>> = (0..r)
            .map(|i| {
                let mut acc = Ratio::zero();
                for (j, cj) in c.iter().enumerate() {
                    acc += Ratio::from_integer(elt.linear[i * r + j]) * *cj;
                }
                acc
            })
            .collect();
        for (i, m) in moved.iter_mut().enumerate() {
            *m += Ratio::from_integer(l * elt.trans[i]);
        }
        // Back to fundamental coordinates, minus rho.
        let mut out = Vec::with_capacity(r);
        for i in 0..r {
            let mut acc = Ratio::zero();
            for (j, mj) in moved.iter().enumerate() {
                acc += Ratio::from_integer(self.cartan[i][j]) * *mj;
            }
            acc -= Ratio::one();
            assert!(acc.is_integer(), "dot action must send weights to weights");
            out.push(acc.to_integer());
        }
        Weight(out)
    }

    /// Indices of the positive roots alpha with (rho, alpha^vee) = 0 mod l.
    /// The full set Phi_{0,l} is these roots together with their negatives.
    pub fn phi0_positive(&self, l: i64) -> Vec<usize> {
        assert!(l >= 2);
        (0..self.positive.len())
            .filter(|&i| self.rho_pairings[i] % l == 0)
            .collect()
    }

    /// The paper's exceptional integers l > 1: (i) even, or divisible by 3 in
    /// G2; (ii) a bad prime; (iii) dividing rank+1 in type A; (iv) 9 in E6,
    /// 7 or 9 in E8.
    pub fn is_exceptional(&self, l: i64) -> bool {
        assert!(l >= 2);
        if l % 2 == 0 || (self.rtype == RsType::G && l % 3 == 0) {
            return true;
        }
        let bad: &[i64] = match self.rtype {
            RsType::A => &[],
            RsType::B | RsType::C | RsType::D => &[2],
            RsType::E if self.rank == 8 => &[2, 3, 5],
            RsType::E | RsType::F | RsType::G => &[2, 3],
        };
        if bad.contains(&l) {
            return true;
        }
        if self.rtype == RsType::A && (self.rank as i64 + 1) % l == 0 {
            return true;
        }
        match (self.rtype, self.rank) {
            (RsType::E, 6) => l == 9,
            (RsType::E, 8) => l == 7 || l == 9,
            _ => false,
        }
    }

    /// Smallest non-exceptional l greater than the Coxeter number.
    pub fn default_l(&self) -> i64 {
        let mut l = self.coxeter_number + 1;
        while self.is_exceptional(l) {
            l += 1;
        }
        l
    }
}

/// Dynkin diagram edges (0-indexed, Bourbaki numbering) and half squared
/// lengths of the simple roots.
fn diagram(rtype: RsType, r: usize) -> (Vec<(usize, usize)>, Vec<i64>) {
    let chain = |n: usize| (0..n.saturating_sub(1)).map(|i| (i, i + 1)).collect::<Vec<_>>();
    match rtype {
        RsType::A => (chain(r), vec![1; r]),
        RsType::B => {
            let mut d = vec![2; r];
            d[r - 1] = 1;
            (chain(r), d)
        }
        RsType::C => {
            let mut d = vec![1; r];
            d[r - 1] = 2;
            (chain(r), d)
        }
        RsType::D => {
            let mut edges = chain(r - 1);
            edges.push((r - 3, r - 1));
            (edges, vec![1; r])
        }
        RsType::E => {
            // Bourbaki: chain 1-3-4-5-..., with node 2 attached to node 4.
            let mut edges = vec![(0, 2), (2, 3), (1, 3)];
            for i in 3..r - 1 {
                edges.push((i, i + 1));
            }
            (edges, vec![1; r])
        }
        RsType::F => (chain(4), vec![2, 2, 1, 1]),
        RsType::G => (chain(2), vec![1, 3]),
    }
}

/// All positive roots as the closure of the simple roots under simple
/// reflections, keeping only positive vectors.
fn positive_roots_by_closure(cartan: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let r = cartan.len();
    let mut seen: std::collections::HashSet<Vec<i64>> = std::collections::HashSet::new();
    let mut queue: Vec<Vec<i64>> = Vec::new();
    for i in 0..r {
        let mut e = vec![0; r];
        e[i] = 1;
        seen.insert(e.clone());
        queue.push(e);
    }
    while let Some(c) = queue.pop() {
        for i in 0..r {
            let pairing: i64 = (0..r).map(|j| cartan[i][j] * c[j]).sum();
            let mut refl = c.clone();
            refl[i] -= pairing;
            if refl.iter().all(|&x| x >= 0) && refl.iter().any(|&x| x > 0) && seen.insert(refl.clone())
            {
                queue.push(refl);
            }
        }
    }
    let mut roots: Vec<Vec<i64>> = seen.into_iter().collect();
    roots.sort_by_key(|c| (c.iter().sum::<i64>(), c.clone()));
    roots
}

fn norm2(gram: &[Vec<Ratio<i64>>], c: &[i64]) -> i64 {
    let mut acc = Ratio::zero();
    for (i, a) in c.iter().enumerate() {
        if *a == 0 {
            continue;
        }
        for (j, b) in c.iter().enumerate() {
            if *b != 0 {
                acc += gram[i][j] * Ratio::from_integer(a * b);
            }
        }
    }
    assert!(acc.is_integer());
    acc.to_integer()
}

/// Gauss-Jordan inverse of an integer matrix over the rationals.
fn invert(m: &[Vec<i64>]) -> Option<Vec<Vec<Ratio<i64>>>> {
    let n = m.len();
    let mut a: Vec<Vec<Ratio<i64>>> = m
        .iter()
        .map(|row| row.iter().map(|&x| Ratio::from_integer(x)).collect())
        .collect();
    let mut inv: Vec<Vec<Ratio<i64>>> = (0..n)
        .map(|i| (0..n).map(|j| if i == j { Ratio::one() } else { Ratio::zero() }).collect())
        .collect();
    for col in 0..n {
        let pivot = (col..n).find(|&row| !a[row][col].is_zero())?;
        a.swap(col, pivot);
        inv.swap(col, pivot);
        let p = a[col][col];
        for j in 0..n {
            a[col][j] /= p;
            inv[col][j] /= p;
        }
        for row in 0..n {
            if row == col || a[row][col].is_zero() {
                continue;
            }
            let f = a[row][col];
            for j in 0..n {
                let ac = a[col][j];
                let ic = inv[col][j];
                a[row][j] -= f * ac;
                inv[row][j] -= f * ic;
            }
        }
    }
    Some(inv)
}
