//! Finite and affine Weyl groups as tables of integer affine maps.
//!
//! An element is the map u -> A u + t on simple-root coordinates, where A is
//! the matrix of a finite Weyl group element and t lies in the root lattice.
//! Identity and hashing use only (A, t); lengths are BFS depths, assigned at
//! generation time. The affine generator s0 is the reflection s_{alpha0,-1}
//! in the hyperplane (u, alpha0^vee) = -1, with alpha0 the maximal short
//! root, so the generated group is W extended by all root-lattice
//! translations.
//!
//! Elements are indexed by (length, lexicographic normal form); the normal
//! form is the reduced word that repeatedly takes the smallest left descent.

use crate::error::Error;
use crate::roots::RootSystem;
use std::collections::{HashMap, HashSet};

/// Default cap on generated elements; keeps the dense Bruhat table small.
pub const DEFAULT_MAX_ELEMENTS: usize = 20_000;

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct AffineElement {
    /// Row-major rank x rank matrix acting on simple-root coordinates.
    pub linear: Vec<i64>,
    /// Translation in simple-root coordinates.
    pub trans: Vec<i64>,
}

impl AffineElement {
    pub fn identity(rank: usize) -> AffineElement {
        let mut linear = vec![0; rank * rank];
        for i in 0..rank {
            linear[i * rank + i] = 1;
        }
        AffineElement { linear, trans: vec![0; rank] }
    }

    /// Composition self o other (apply other first).
    pub fn compose(&self, other: &AffineElement, rank: usize) -> AffineElement {
        let mut linear = vec![0; rank * rank];
        for i in 0..rank {
            for k in 0..rank {
                let a = self.linear[i * rank + k];
                if a == 0 {
                    continue;
                }
                for j in 0..rank {
                    linear[i * rank + j] += a * other.linear[k * rank + j];
                }
            }
        }
        let mut trans = self.trans.clone();
        for i in 0..rank {
            for k in 0..rank {
                trans[i] += self.linear[i * rank + k] * other.trans[k];
            }
        }
        AffineElement { linear, trans }
    }

    pub fn apply(&self, v: &[i64], rank: usize) -> Vec<i64> {
        (0..rank)
            .map(|i| {
                (0..rank).map(|j| self.linear[i * rank + j] * v[j]).sum::<i64>() + self.trans[i]
            })
            .collect()
    }

    pub fn is_translation(&self, rank: usize) -> bool {
        self.linear == AffineElement::identity(rank).linear
    }
}

/// Dense bit matrix for the Bruhat relation, row y, column x: x <= y.
struct BitMatrix {
    words_per_row: usize,
    data: Vec<u64>,
}

impl BitMatrix {
    fn new(n: usize) -> BitMatrix {
        let words_per_row = n.div_ceil(64);
        BitMatrix { words_per_row, data: vec![0; words_per_row * n] }
    }

    fn get(&self, row: usize, col: usize) -> bool {
        self.data[row * self.words_per_row + col / 64] >> (col % 64) & 1 == 1
    }

    fn set(&mut self, row: usize, col: usize) {
        self.data[row * self.words_per_row + col / 64] |= 1 << (col % 64);
    }
}

pub struct GroupTable {
    rs: RootSystem,
    affine: bool,
    max_length: u32,
    /// (generator name, element); name 0 is the affine generator s0.
    gens: Vec<(u8, AffineElement)>,
    elements: Vec<AffineElement>,
    lengths: Vec<u32>,
    words: Vec<Vec<u8>>,
    index: HashMap<AffineElement, u32>,
    right: Vec<Vec<Option<u32>>>,
    left: Vec<Vec<Option<u32>>>,
    wplus: Vec<bool>,
    bruhat: BitMatrix,
    /// length_start[k] = first index of the length-k stratum.
    length_start: Vec<u32>,
}

impl GroupTable {
    /// BFS generation of all elements of length at most max_length.
    pub fn generate(
        rs: RootSystem,
        affine: bool,
        max_length: u32,
        max_elements: usize,
    ) -> Result<GroupTable, Error> {
        let rank = rs.rank();
        let mut gens: Vec<(u8, AffineElement)> = Vec::new();
        if affine {
            gens.push((0, affine_generator(&rs)));
        }
        for i in 0..rank {
            gens.push((i as u8 + 1, simple_reflection(&rs, i)));
        }

        let mut elements = vec![AffineElement::identity(rank)];
        let mut lengths = vec![0u32];
        let mut words: Vec<Vec<u8>> = vec![Vec::new()];
        let mut index: HashMap<AffineElement, u32> = HashMap::new();
        index.insert(elements[0].clone(), 0);
        let mut length_start = vec![0u32];

        let mut frontier: Vec<u32> = vec![0];
        for len in 1..=max_length {
            let mut fresh: HashSet<AffineElement> = HashSet::new();
            for &i in &frontier {
                let e = elements[i as usize].clone();
                for (_, g) in &gens {
                    let child = e.compose(g, rank);
                    if let Some(&j) = index.get(&child) {
                        debug_assert_eq!(lengths[j as usize], len - 2, "length parity");
                    } else {
                        fresh.insert(child);
                    }
                }
            }
            if fresh.is_empty() {
                break;
            }
            // Normal form: smallest left descent, then recurse; all shorter
            // elements are already indexed so the descent walk is one lookup.
            let mut level: Vec<(Vec<u8>, AffineElement)> = fresh
                .into_iter()
                .map(|e| {
                    let mut word = None;
                    for (name, g) in &gens {
                        let le = g.compose(&e, rank);
                        if let Some(&j) = index.get(&le) {
                            let mut w = Vec::with_capacity(len as usize);
                            w.push(*name);
                            w.extend_from_slice(&words[j as usize]);
                            word = Some(w);
                            break;
                        }
                    }
                    (word.expect("non-identity element has a left descent"), e)
                })
                .collect();
            level.sort_by(|a, b| a.0.cmp(&b.0));
            length_start.push(elements.len() as u32);
            for (word, e) in level {
                if elements.len() >= max_elements {
                    return Err(Error::ResourceCap(format!(
                        "group table for {} exceeds {} elements at length {}",
                        rs.label(),
                        max_elements,
                        len
                    )));
                }
                let id = elements.len() as u32;
                index.insert(e.clone(), id);
                elements.push(e);
                lengths.push(len);
                words.push(word);
            }
            frontier = (length_start[len as usize] as u32..elements.len() as u32).collect();
        }
        length_start.push(elements.len() as u32);

        let n = elements.len();
        let right: Vec<Vec<Option<u32>>> = (0..n)
            .map(|i| {
                gens.iter()
                    .map(|(_, g)| index.get(&elements[i].compose(g, rank)).copied())
                    .collect()
            })
            .collect();
        let left: Vec<Vec<Option<u32>>> = (0..n)
            .map(|i| {
                gens.iter()
                    .map(|(_, g)| index.get(&g.compose(&elements[i], rank)).copied())
                    .collect()
            })
            .collect();

        let wplus: Vec<bool> = (0..n)
            .map(|i| {
                lengths[i] > 0
                    && gens.iter().enumerate().all(|(pos, (name, _))| {
                        *name == 0
                            || matches!(left[i][pos], Some(j) if lengths[j as usize] < lengths[i])
                    })
            })
            .collect();

        // Bruhat order by the lifting property, rows in index (length) order.
        let mut bruhat = BitMatrix::new(n);
        bruhat.set(0, 0);
        for y in 1..n {
            let pos = (0..gens.len())
                .find(|&p| matches!(right[y][p], Some(j) if lengths[j as usize] < lengths[y]))
                .expect("non-identity element has a right descent");
            let ys = right[y][pos].unwrap() as usize;
            for x in 0..n {
                if lengths[x] > lengths[y] {
                    continue;
                }
                let m = match right[x][pos] {
                    Some(j) if lengths[j as usize] < lengths[x] => j as usize,
                    _ => x,
                };
                if bruhat.get(ys, m) {
                    bruhat.set(y, x);
                }
            }
        }

        Ok(GroupTable {
            rs,
            affine,
            max_length,
            gens,
            elements,
            lengths,
            words,
            index,
            right,
            left,
            wplus,
            bruhat,
            length_start,
        })
    }

    pub fn root_system(&self) -> &RootSystem {
        &self.rs
    }

    pub fn is_affine(&self) -> bool {
        self.affine
    }

    pub fn max_length(&self) -> u32 {
        self.max_length
    }

    /// Identity string such as "A2 affine" or "A3 finite".
    pub fn label(&self) -> String {
        format!("{} {}", self.rs.label(), if self.affine { "affine" } else { "finite" })
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn element(&self, i: u32) -> &AffineElement {
        &self.elements[i as usize]
    }

    pub fn length(&self, i: u32) -> u32 {
        self.lengths[i as usize]
    }

    pub fn word(&self, i: u32) -> &[u8] {
        &self.words[i as usize]
    }

    pub fn num_gens(&self) -> usize {
        self.gens.len()
    }

    pub fn gen_name(&self, pos: usize) -> u8 {
        self.gens[pos].0
    }

    pub fn right_mul(&self, i: u32, pos: usize) -> Option<u32> {
        self.right[i as usize][pos]
    }

    pub fn left_mul(&self, i: u32, pos: usize) -> Option<u32> {
        self.left[i as usize][pos]
    }

    /// Indices of the elements of the given length.
    pub fn stratum(&self, len: u32) -> std::ops::Range<u32> {
        let len = len as usize;
        if len + 1 >= self.length_start.len() {
            let end = *self.length_start.last().unwrap();
            if len >= self.length_start.len() {
                return end..end;
            }
            return self.length_start[len]..end;
        }
        self.length_start[len]..self.length_start[len + 1]
    }

    /// Largest length actually present (can be below max_length for finite W).
    pub fn top_length(&self) -> u32 {
        *self.lengths.last().unwrap_or(&0)
    }

    pub fn bruhat_leq(&self, x: u32, y: u32) -> bool {
        self.bruhat.get(y as usize, x as usize)
    }

    pub fn is_wplus(&self, i: u32) -> bool {
        self.wplus[i as usize]
    }

    /// All W+ elements in table order, i.e. sorted by length then word.
    pub fn wplus_indices(&self) -> Vec<u32> {
        (0..self.len() as u32).filter(|&i| self.wplus[i as usize]).collect()
    }

    /// Smallest-name left descent, as (generator position, index of s*x).
    pub fn left_descent_min(&self, x: u32) -> Option<(usize, u32)> {
        self.left_descent(x, false)
    }

    /// Largest-name left descent; used to cross-check descent independence.
    pub fn left_descent_max(&self, x: u32) -> Option<(usize, u32)> {
        self.left_descent(x, true)
    }

    fn left_descent(&self, x: u32, largest: bool) -> Option<(usize, u32)> {
        let it: Box<dyn Iterator<Item = usize>> = if largest {
            Box::new((0..self.gens.len()).rev())
        } else {
            Box::new(0..self.gens.len())
        };
        for pos in it {
            if let Some(j) = self.left[x as usize][pos] {
                if self.lengths[j as usize] < self.lengths[x as usize] {
                    return Some((pos, j));
                }
            }
        }
        None
    }

    /// Compose a word of generator names into an affine map.
    pub fn compose_word(&self, word: &[u8]) -> Result<AffineElement, Error> {
        let rank = self.rs.rank();
        let mut e = AffineElement::identity(rank);
        for &name in word {
            let gen = self
                .gens
                .iter()
                .find(|(n, _)| *n == name)
                .ok_or_else(|| Error::BadArgument(format!("no generator s{name} in {}", self.label())))?;
            e = e.compose(&gen.1, rank);
        }
        Ok(e)
    }

    pub fn index_of(&self, e: &AffineElement) -> Option<u32> {
        self.index.get(e).copied()
    }

    /// Parse a whitespace-separated word such as "s1 s0 s1" ("e" is the
    /// identity) and locate the resulting element in the table.
    pub fn parse_word(&self, s: &str) -> Result<u32, Error> {
        let s = s.trim();
        let mut word = Vec::new();
        if !s.is_empty() && s != "e" {
            for tok in s.split_whitespace() {
                let name: u8 = tok
                    .strip_prefix('s')
                    .and_then(|t| t.parse().ok())
                    .ok_or_else(|| Error::BadArgument(format!("bad generator token {tok:?}")))?;
                if name as usize > self.rs.rank() {
                    return Err(Error::BadArgument(format!("no generator s{name}, rank is {}", self.rs.rank())));
                }
                if name == 0 && !self.affine {
                    return Err(Error::BadArgument("s0 needs an affine table".into()));
                }
                word.push(name);
            }
        }
        let e = self.compose_word(&word)?;
        self.index_of(&e).ok_or_else(|| {
            Error::Truncation(format!(
                "element of word {:?} lies outside the table (max length {})",
                s, self.max_length
            ))
        })
    }

    /// Render an element as its normal-form word; identity prints "e".
    pub fn word_string(&self, i: u32) -> String {
        let w = &self.words[i as usize];
        if w.is_empty() {
            return "e".to_string();
        }
        w.iter().map(|g| format!("s{g}")).collect::<Vec<_>>().join(" ")
    }
}

fn simple_reflection(rs: &RootSystem, i: usize) -> AffineElement {
    let rank = rs.rank();
    let mut e = AffineElement::identity(rank);
    for j in 0..rank {
        e.linear[i * rank + j] -= rs.cartan()[i][j];
    }
    e
}

/// s_{alpha0,-1}: u -> u - ((u, alpha0^vee) + 1) alpha0.
fn affine_generator(rs: &RootSystem) -> AffineElement {
    let rank = rs.rank();
    let alpha0 = rs.alpha0().to_vec();
    let mut e = AffineElement::identity(rank);
    for j in 0..rank {
        let mut unit = vec![0i64; rank];
        unit[j] = 1;
        let p = rs.root_coroot_pairing(&unit, &alpha0);
        for k in 0..rank {
            e.linear[k * rank + j] -= alpha0[k] * p;
        }
    }
    e.trans = alpha0.iter().map(|c| -c).collect();
    e
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::roots::RsType;

    fn table(t: RsType, r: usize, affine: bool, len: u32) -> GroupTable {
        let rs = RootSystem::new(t, r).unwrap();
        GroupTable::generate(rs, affine, len, DEFAULT_MAX_ELEMENTS).unwrap()
    }

    fn counts_by_length(t: &GroupTable) -> Vec<usize> {
        (0..=t.top_length()).map(|l| t.stratum(l).len()).collect()
    }

    #[test]
    fn a1_affine_counts() {
        let t = table(RsType::A, 1, true, 3);
        assert_eq!(counts_by_length(&t), vec![1, 2, 2, 2]);
    }

    #[test]
    fn a2_affine_counts_match_word_enumeration() {
        let t = table(RsType::A, 2, true, 3);
        assert_eq!(counts_by_length(&t), vec![1, 3, 6, 9]);

        // Independent check: enumerate all words over the generators and
        // record the minimal word length reaching each affine map.
        let rank = 2;
        let gens: Vec<AffineElement> =
            (0..t.num_gens()).map(|p| t.compose_word(&[t.gen_name(p)]).unwrap()).collect();
        let mut min_len: HashMap<AffineElement, u32> = HashMap::new();
        min_len.insert(AffineElement::identity(rank), 0);
        let mut layer = vec![AffineElement::identity(rank)];
        for l in 1..=3u32 {
            let mut next = Vec::new();
            for e in &layer {
                for g in &gens {
                    let c = e.compose(g, rank);
                    if !min_len.contains_key(&c) {
                        min_len.insert(c.clone(), l);
                        next.push(c);
                    }
                }
            }
            layer = next;
        }
        for i in 0..t.len() as u32 {
            assert_eq!(min_len.get(t.element(i)), Some(&t.length(i)));
        }
    }

    #[test]
    fn a2_finite_counts() {
        let t = table(RsType::A, 2, false, 5);
        assert_eq!(counts_by_length(&t), vec![1, 2, 2, 1]);
        assert_eq!(t.len(), 6);
    }

    #[test]
    fn words_round_trip() {
        let t = table(RsType::A, 2, true, 6);
        for i in 0..t.len() as u32 {
            let s = t.word_string(i);
            assert_eq!(t.parse_word(&s).unwrap(), i);
            assert_eq!(t.word(i).len() as u32, t.length(i), "normal form is reduced");
        }
        assert!(t.parse_word("s3").is_err());
        // A word whose element falls outside the table: extend a top-length
        // element by a length-increasing generator.
        let (i, pos) = (0..t.len() as u32)
            .filter(|&i| t.length(i) == t.top_length())
            .find_map(|i| (0..t.num_gens()).find(|&p| t.right_mul(i, p).is_none()).map(|p| (i, p)))
            .unwrap();
        let long = format!("{} s{}", t.word_string(i), t.gen_name(pos));
        assert!(matches!(t.parse_word(&long), Err(crate::error::Error::Truncation(_))));
    }

    #[test]
    fn length_parity_under_generators() {
        let t = table(RsType::B, 2, true, 5);
        for i in 0..t.len() as u32 {
            for pos in 0..t.num_gens() {
                if let Some(j) = t.right_mul(i, pos) {
                    let d = t.length(i) as i64 - t.length(j) as i64;
                    assert_eq!(d.abs(), 1);
                }
            }
        }
    }

    #[test]
    fn bruhat_a1_is_length_order() {
        let t = table(RsType::A, 1, true, 8);
        for x in 0..t.len() as u32 {
            for y in 0..t.len() as u32 {
                assert_eq!(t.bruhat_leq(x, y), t.length(x) <= t.length(y) && (t.length(x) < t.length(y) || x == y));
            }
        }
    }

    #[test]
    fn bruhat_matches_subword_property() {
        let t = table(RsType::A, 2, true, 6);
        // x <= y iff some subsequence of a fixed reduced word of y multiplies
        // to x with the right length.
        for y in 0..t.len() as u32 {
            let wy = t.word(y).to_vec();
            let mut reachable: HashSet<u32> = HashSet::new();
            for mask in 0u32..(1 << wy.len()) {
                let sub: Vec<u8> =
                    wy.iter().enumerate().filter(|(k, _)| mask >> k & 1 == 1).map(|(_, &g)| g).collect();
                let len = sub.len() as u32;
                let e = t.compose_word(&sub).unwrap();
                if let Some(i) = t.index_of(&e) {
                    if t.length(i) == len {
                        reachable.insert(i);
                    }
                }
            }
            for x in 0..t.len() as u32 {
                assert_eq!(t.bruhat_leq(x, y), reachable.contains(&x), "x={} y={}", x, y);
            }
        }
        // The designated pair: s1 is not below s0 s2.
        let x = t.parse_word("s1").unwrap();
        let y = t.parse_word("s0 s2").unwrap();
        assert!(!t.bruhat_leq(x, y));
    }

    #[test]
    fn wplus_examples() {
        let a1 = table(RsType::A, 1, true, 5);
        let wp = a1.wplus_indices();
        let lens: Vec<u32> = wp.iter().map(|&i| a1.length(i)).collect();
        assert_eq!(lens, vec![1, 2, 3, 4, 5]);
        assert!(!a1.is_wplus(0), "identity is excluded");

        let a2 = table(RsType::A, 2, true, 3);
        let wp: Vec<String> = a2.wplus_indices().iter().map(|&i| a2.word_string(i)).collect();
        assert_eq!(wp, vec!["s1 s2 s1"]);

        let short = table(RsType::A, 2, true, 2);
        assert!(short.wplus_indices().is_empty(), "below length of w0");
    }

    #[test]
    fn coset_partition_below_cutoff() {
        let t = table(RsType::A, 2, true, 8);
        let w0_len = t.root_system().num_positive_roots() as u32;
        let wplus = t.wplus_indices();
        for x in 0..t.len() as u32 {
            if t.length(x) + w0_len > t.max_length() {
                continue;
            }
            let xinv_word: Vec<u8> = t.word(x).iter().rev().copied().collect();
            let xinv = t.compose_word(&xinv_word).unwrap();
            let rank = t.root_system().rank();
            let above: Vec<u32> = wplus
                .iter()
                .copied()
                .filter(|&w| {
                    let u = t.element(w).compose(&xinv, rank);
                    u.trans.iter().all(|&c| c == 0) && t.bruhat_leq(x, w)
                })
                .collect();
            assert_eq!(above.len(), 1, "x = {}", t.word_string(x));
        }
    }

    #[test]
    fn translation_lengths_match_closed_formula() {
        let t = table(RsType::A, 2, true, 8);
        let rs = t.root_system();
        let mut seen = 0;
        for i in 0..t.len() as u32 {
            let e = t.element(i);
            if !e.is_translation(rs.rank()) || i == 0 {
                continue;
            }
            seen += 1;
            let formula: i64 = (0..rs.num_positive_roots())
                .map(|a| rs.root_coroot_pairing(&e.trans, &rs.positive_roots()[a]).abs())
                .sum();
            assert_eq!(t.length(i) as i64, formula);
        }
        assert!(seen >= 6, "expected several pure translations up to length 8");
    }
}
