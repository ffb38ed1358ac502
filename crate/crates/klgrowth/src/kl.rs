//! Memoized Kazhdan-Lusztig polynomial tables over a group table.
//!
//! The recursion works on left descents: with s chosen so that sx < x,
//! v = sx, and c = 1 if sy < y else 0,
//!
//!   P_{y,x} = q^{1-c} P_{sy,v} + q^c P_{y,v}
//!             - sum over z with sz < z of mu(z,v) q^{(l(x)-l(z))/2} P_{y,z}.
//!
//! The result does not depend on which descent is chosen; the rule is kept
//! configurable so that independence can be tested, not assumed. Positivity,
//! the degree bound, and constant term 1 are asserted on every computed pair:
//! a violation is an implementation bug, never data.

use crate::error::Error;
use crate::poly::Poly;
use crate::weyl::GroupTable;
use std::collections::HashMap;
use std::io::{BufRead, Write};
use std::sync::{Arc, RwLock};

const CACHE_MAGIC: &str = "klgrowth-kl-cache v1";

/// Which left descent of x drives the recursion.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Default)]
pub enum DescentRule {
    #[default]
    SmallestIndex,
    LargestIndex,
}

pub struct KlTable {
    table: GroupTable,
    rule: DescentRule,
    memo: RwLock<HashMap<(u32, u32), Arc<Poly>>>,
    /// Per element v, all (z, mu(z,v)) with z < v and mu nonzero, z ascending.
    mu_lists: RwLock<HashMap<u32, Arc<Vec<(u32, i64)>>>>,
    zero: Arc<Poly>,
    one: Arc<Poly>,
}

impl KlTable {
    pub fn new(table: GroupTable, rule: DescentRule) -> KlTable {
        KlTable {
            table,
            rule,
            memo: RwLock::new(HashMap::new()),
            mu_lists: RwLock::new(HashMap::new()),
            zero: Arc::new(Poly::zero()),
            one: Arc::new(Poly::one()),
        }
    }

    pub fn group(&self) -> &GroupTable {
        &self.table
    }

    /// P_{y,x}, exact and memoized.
    pub fn kl(&self, y: u32, x: u32) -> Arc<Poly> {
        if y == x {
            return self.one.clone();
        }
        if !self.table.bruhat_leq(y, x) {
            return self.zero.clone();
        }
        if let Some(p) = self.memo.read().unwrap().get(&(y, x)) {
            return p.clone();
        }

        let (pos, v) = match self.rule {
            DescentRule::SmallestIndex => self.table.left_descent_min(x),
            DescentRule::LargestIndex => self.table.left_descent_max(x),
        }
        .expect("x above y has a left descent");
        let sy = self.table.left_mul(y, pos).expect("sy stays inside the table");
        let c = self.table.length(sy) < self.table.length(y);

        let mut p = if c {
            self.kl(sy, v).add(&self.kl(y, v).shift(1))
        } else {
            self.kl(sy, v).shift(1).add(&self.kl(y, v))
        };
        for &(z, mu) in self.mu_list(v).iter() {
            let sz = self.table.left_mul(z, pos).expect("sz stays inside the table");
            if self.table.length(sz) >= self.table.length(z) || !self.table.bruhat_leq(y, z) {
                continue;
            }
            let exp = (self.table.length(x) - self.table.length(z)) / 2;
            p = p.sub(&self.kl(y, z).shift(exp as usize).scale(mu));
        }

        assert!(p.is_nonnegative(), "KL positivity failed for ({y},{x})");
        assert_eq!(p.coeff(0), 1, "KL constant term failed for ({y},{x})");
        let bound = (self.table.length(x) - self.table.length(y) - 1) / 2;
        assert!(
            p.degree().unwrap_or(0) <= bound as usize,
            "KL degree bound failed for ({y},{x})"
        );

        let p = Arc::new(p);
        self.memo.write().unwrap().insert((y, x), p.clone());
        p
    }

    /// mu(a, b), symmetric in its arguments; 0 on incomparable pairs.
    pub fn mu(&self, a: u32, b: u32) -> i64 {
        let (la, lb) = (self.table.length(a), self.table.length(b));
        if la == lb {
            return 0;
        }
        let (y, x) = if la < lb { (a, b) } else { (b, a) };
        self.mu_ordered(y, x)
    }

    /// mu(y, x) for l(y) < l(x): the t^{l(x)-l(y)-1} coefficient of P_{y,x}.
    fn mu_ordered(&self, y: u32, x: u32) -> i64 {
        let delta = self.table.length(x) - self.table.length(y);
        if delta % 2 == 0 {
            return 0;
        }
        self.kl(y, x).coeff((delta as usize - 1) / 2)
    }

    /// All (z, mu(z,v)) with nonzero mu and z strictly below v, z ascending.
    pub fn mu_list(&self, v: u32) -> Arc<Vec<(u32, i64)>> {
        if let Some(l) = self.mu_lists.read().unwrap().get(&v) {
            return l.clone();
        }
        let lv = self.table.length(v);
        // Strata are contiguous ascending index ranges, so z comes out sorted.
        let mut list = Vec::new();
        for len in 0..lv {
            if (lv - len) % 2 == 0 {
                continue;
            }
            for z in self.table.stratum(len) {
                if !self.table.bruhat_leq(z, v) {
                    continue;
                }
                let m = self.mu_ordered(z, v);
                if m != 0 {
                    list.push((z, m));
                }
            }
        }
        let list = Arc::new(list);
        self.mu_lists.write().unwrap().insert(v, list.clone());
        list
    }

    /// Compute every pair with l(x) <= level, one length stratum at a time;
    /// strata are internally parallel and depend only on lower strata.
    pub fn build_to(&self, level: u32) -> Result<(), Error> {
        // A table whose top stratum sits below max_length holds the whole
        // finite group; only a genuinely truncated table can under-serve.
        if level > self.table.max_length() && self.table.top_length() == self.table.max_length() {
            return Err(Error::Truncation(format!(
                "build level {level} exceeds table length {}",
                self.table.max_length()
            )));
        }
        use rayon::prelude::*;
        for len in 1..=level.min(self.table.top_length()) {
            let xs: Vec<u32> = self.table.stratum(len).collect();
            xs.par_iter().for_each(|&x| {
                for y in 0..x {
                    if self.table.bruhat_leq(y, x) {
                        self.kl(y, x);
                    }
                }
                self.mu_list(x);
            });
        }
        Ok(())
    }

    /// Write all computed nontrivial pairs, sorted by (x, y), as
    /// `y_word | x_word | c0,c1,...` under a versioned header.
    pub fn save_cache(&self, path: &std::path::Path) -> Result<(), Error> {
        let memo = self.memo.read().unwrap();
        let mut keys: Vec<(u32, u32)> =
            memo.iter().filter(|(_, p)| !p.is_zero()).map(|(&k, _)| k).collect();
        keys.sort_by_key(|&(y, x)| (x, y));
        let mut out = String::new();
        out.push_str(CACHE_MAGIC);
        out.push('\n');
        out.push_str(&format!("{} max_length={}\n", self.table.label(), self.table.max_length()));
        for (y, x) in keys {
            out.push_str(&format!(
                "{} | {} | {}\n",
                self.table.word_string(y),
                self.table.word_string(x),
                memo[&(y, x)].coeff_list()
            ));
        }
        let mut f = std::fs::File::create(path).map_err(|e| Error::Cache(format!("{path:?}: {e}")))?;
        f.write_all(out.as_bytes()).map_err(|e| Error::Cache(format!("{path:?}: {e}")))?;
        Ok(())
    }

    /// Load a cache written by save_cache into the memo. The header must name
    /// the same group and length bound; every line is revalidated.
    pub fn load_cache(&self, path: &std::path::Path) -> Result<usize, Error> {
        let f = std::fs::File::open(path).map_err(|e| Error::Cache(format!("{path:?}: {e}")))?;
        let mut lines = std::io::BufReader::new(f).lines();
        let bad = |msg: String| Error::Cache(format!("{path:?}: {msg}"));
        let magic = lines.next().transpose().map_err(|e| bad(e.to_string()))?;
        if magic.as_deref() != Some(CACHE_MAGIC) {
            return Err(bad(format!("bad header {magic:?}")));
        }
        let want = format!("{} max_length={}", self.table.label(), self.table.max_length());
        let ident = lines.next().transpose().map_err(|e| bad(e.to_string()))?;
        if ident.as_deref() != Some(want.as_str()) {
            return Err(bad(format!("cache is for {ident:?}, table is {want:?}")));
        }
        let mut loaded = 0;
        for line in lines {
            let line = line.map_err(|e| bad(e.to_string()))?;
            if line.trim().is_empty() {
                continue;
            }
            let parts: Vec<&str> = line.split('|').map(str::trim).collect();
            if parts.len() != 3 {
                return Err(bad(format!("malformed line {line:?}")));
            }
            let y = self.table.parse_word(parts[0]).map_err(|e| bad(format!("{e}")))?;
            let x = self.table.parse_word(parts[1]).map_err(|e| bad(format!("{e}")))?;
            let p = Poly::parse_coeff_list(parts[2])
                .map_err(|_| bad(format!("bad coefficients in {line:?}")))?;
            if !self.table.bruhat_leq(y, x) || p.coeff(0) != 1 || !p.is_nonnegative() {
                return Err(bad(format!("inconsistent entry {line:?}")));
            }
            self.memo.write().unwrap().insert((y, x), Arc::new(p));
            loaded += 1;
        }
        Ok(loaded)
    }
}
