//! Exhaustive search for polynomials with coefficients in a finite alphabet
//! whose zero at 1 has the largest possible multiplicity.
//!
//! The tree of coefficient prefixes `a_0, a_1, ...` is explored depth first.
//! A prefix is abandoned as soon as one of the falling-factorial moments
//! `sum a_i i^(j)`, `j < t`, can no longer be cancelled by the remaining
//! coefficients. Target levels `t` are tried from the a-priori cap downward.

use std::sync::atomic::{AtomicBool, AtomicU64, Ordering};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rayon::prelude::*;
use serde::Serialize;

use crate::bounds::{max_mu_for_norm, NormConstraint};
use crate::deltabases::{moment_multiplicity, multiplicity_from_coeffs, ExpansionVector};
use crate::error::{Error, Result};
use crate::exact::{falling_factorial_int, multiplicity_at, rat, BigRational, DensePoly};

/// Default number of retained witnesses.
pub const DEFAULT_WITNESS_CAP: usize = 64;
/// Environment variable limiting the number of explored nodes.
pub const MAX_NODES_ENV: &str = "MULTIZERO_MAX_NODES";
const DEFAULT_MAX_NODES: u64 = 50_000_000_000;
/// Instances with more than `3^25` coefficient vectors are refused.
const MAX_SPACE: u128 = 847_288_609_443;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SearchProblem {
    /// Degree bound.
    pub n: usize,
    pub alphabet: Vec<BigRational>,
    pub require_a0_nonzero: bool,
    pub pruning: bool,
    pub witness_cap: usize,
}

impl SearchProblem {
    /// A problem with `a_0 != 0`, pruning on and the default witness cap.
    pub fn new(n: usize, alphabet: Vec<BigRational>) -> Result<Self> {
        if n == 0 {
            return Err(Error::ParameterDomain("n must be at least 1".into()));
        }
        let mut dedup: Vec<BigRational> = Vec::with_capacity(alphabet.len());
        for a in alphabet {
            if !dedup.contains(&a) {
                dedup.push(a);
            }
        }
        if dedup.iter().all(Zero::is_zero) {
            return Err(Error::ParameterDomain("alphabet needs a nonzero value".into()));
        }
        Ok(SearchProblem {
            n,
            alphabet: dedup,
            require_a0_nonzero: true,
            pruning: true,
            witness_cap: DEFAULT_WITNESS_CAP,
        })
    }

    /// `B = 1 + max|a| / min|a != 0|`, the largest possible `1 + max|a_k/a_0|`.
    pub fn linf_ratio(&self) -> BigRational {
        let nz = self.alphabet.iter().filter(|a| !a.is_zero()).map(|a| a.abs());
        let (lo, hi) = nz.fold((None::<BigRational>, BigRational::zero()), |(lo, hi), a| {
            let lo = match lo {
                Some(l) if l <= a => Some(l),
                _ => Some(a.clone()),
            };
            (lo, if a > hi { a } else { hi })
        });
        BigRational::one() + hi / lo.expect("alphabet has a nonzero value")
    }

    /// A-priori cap on the multiplicity from the `l_inf` bound.
    pub fn cap(&self) -> Result<usize> {
        max_mu_for_norm(self.n, &NormConstraint::LinfRatio, &self.linf_ratio())
    }

    /// Whether sign flips map the alphabet to itself.
    pub fn sign_symmetric(&self) -> bool {
        self.alphabet.iter().all(|a| self.alphabet.contains(&-a))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SearchResult {
    pub mu_max: usize,
    /// First witnesses in exploration order, at most `witness_cap`.
    pub witnesses: Vec<Vec<BigRational>>,
    /// Number of coefficient vectors attaining `mu_max`.
    pub witness_count: u64,
    pub nodes_explored: u64,
    pub bound_used: usize,
    /// Witnesses are listed up to a global sign.
    pub sign_reduced: bool,
}

struct Tree {
    n: usize,
    /// Alphabet scaled to integers, in declared order.
    vals: Vec<i128>,
    min: i128,
    max: i128,
    require_a0: bool,
    canonical: bool,
    /// `ff[i][j] = i^(j)` where it fits.
    ff: Vec<Vec<Option<i128>>>,
    /// `tail[k][j] = sum_{i > k} i^(j)` for `j < t_max`.
    tail: Vec<Vec<i128>>,
    pruning: bool,
    cap: usize,
    nodes: AtomicU64,
    max_nodes: u64,
    aborted: AtomicBool,
}

#[derive(Default)]
struct Local {
    best: Option<usize>,
    witnesses: Vec<Vec<u8>>,
    count: u64,
    nodes: u64,
}

impl Local {
    fn record(&mut self, mu: usize, idx: &[u8], cap: usize) {
        match self.best {
            Some(b) if mu < b => return,
            Some(b) if mu == b => {}
            _ => {
                self.best = Some(mu);
                self.witnesses.clear();
                self.count = 0;
            }
        }
        self.count += 1;
        if self.witnesses.len() < cap {
            self.witnesses.push(idx.to_vec());
        }
    }
}

fn fits(v: &BigInt) -> Option<i128> {
    // Leaves headroom for sums of up to 2^7 terms.
    v.to_i128().filter(|x| x.unsigned_abs() < (1u128 << 119))
}

impl Tree {
    fn build(prob: &SearchProblem, t_max: usize) -> Result<Self> {
        let n = prob.n;
        let lcm = prob
            .alphabet
            .iter()
            .fold(BigInt::one(), |acc, a| acc.lcm(a.denom()));
        let vals = prob
            .alphabet
            .iter()
            .map(|a| (a.numer() * (&lcm / a.denom())).to_i64().map(i128::from))
            .collect::<Option<Vec<_>>>()
            .ok_or_else(|| Error::InstanceTooLarge("alphabet entries too large".into()))?;
        let max_abs = vals.iter().map(|v| v.unsigned_abs()).max().unwrap_or(0);
        let ff = (0..=n)
            .map(|i| {
                (0..=n)
                    .map(|j| fits(&falling_factorial_int(i as i64, j)))
                    .collect()
            })
            .collect::<Vec<Vec<_>>>();
        let mut tail = vec![vec![0i128; t_max]; n + 1];
        for j in 0..t_max {
            let mut acc = BigInt::zero();
            for k in (0..n).rev() {
                acc += falling_factorial_int(k as i64 + 1, j);
                let scaled = &acc * BigInt::from(max_abs) * BigInt::from(n as u64 + 1);
                if fits(&scaled).is_none() {
                    return Err(Error::InstanceTooLarge(format!(
                        "moments of order {j} exceed the integer fast path"
                    )));
                }
                tail[k][j] = fits(&acc).expect("checked above");
            }
        }
        let max_nodes = std::env::var(MAX_NODES_ENV)
            .ok()
            .and_then(|s| s.trim().parse().ok())
            .unwrap_or(DEFAULT_MAX_NODES);
        Ok(Tree {
            n,
            min: *vals.iter().min().expect("nonempty"),
            max: *vals.iter().max().expect("nonempty"),
            vals,
            require_a0: prob.require_a0_nonzero,
            canonical: prob.sign_symmetric(),
            ff,
            tail,
            pruning: prob.pruning,
            cap: prob.witness_cap,
            nodes: AtomicU64::new(0),
            max_nodes,
            aborted: AtomicBool::new(false),
        })
    }

    /// Values allowed at position `k` given whether a nonzero value was already placed.
    fn allowed(&self, k: usize, seen_nonzero: bool, v: i128) -> bool {
        if k == 0 && self.require_a0 && v == 0 {
            return false;
        }
        !(self.canonical && !seen_nonzero && v < 0)
    }

    fn ff(&self, i: usize, j: usize) -> i128 {
        self.ff[i][j].expect("order below t_max fits")
    }

    fn viable(&self, k: usize, moments: &[i128]) -> bool {
        if k == self.n {
            return moments.iter().all(|&m| m == 0);
        }
        if !self.pruning {
            return true;
        }
        moments.iter().enumerate().all(|(j, &m)| {
            let s = self.tail[k][j];
            let need = -m;
            self.min * s <= need && need <= self.max * s
        })
    }

    fn leaf_multiplicity(&self, idx: &[u8], t: usize) -> usize {
        let mut j = t;
        while j <= self.n {
            let mut acc: i128 = 0;
            for (i, &c) in idx.iter().enumerate() {
                let v = self.vals[c as usize];
                if v == 0 {
                    continue;
                }
                match self.ff[i][j].and_then(|f| f.checked_mul(v)).and_then(|p| acc.checked_add(p)) {
                    Some(s) => acc = s,
                    None => return self.leaf_multiplicity_big(idx),
                }
            }
            if acc != 0 {
                return j;
            }
            j += 1;
        }
        unreachable!("a nonzero vector of length n+1 has a nonzero moment of order <= n")
    }

    fn leaf_multiplicity_big(&self, idx: &[u8]) -> usize {
        let a: Vec<BigRational> = idx
            .iter()
            .map(|&c| BigRational::from_integer(BigInt::from(self.vals[c as usize])))
            .collect();
        moment_multiplicity(&a).expect("nonzero vector")
    }

    fn tick(&self, local: &mut Local) -> bool {
        local.nodes += 1;
        if local.nodes.is_multiple_of(4096) {
            let total = self.nodes.fetch_add(4096, Ordering::Relaxed) + 4096;
            if total > self.max_nodes {
                self.aborted.store(true, Ordering::Relaxed);
            }
        }
        !self.aborted.load(Ordering::Relaxed)
    }

    fn dfs(
        &self,
        k: usize,
        idx: &mut Vec<u8>,
        moments: &mut [i128],
        seen_nonzero: bool,
        t: usize,
        local: &mut Local,
    ) {
        for (c, &v) in self.vals.iter().enumerate() {
            if !self.allowed(k, seen_nonzero, v) {
                continue;
            }
            if !self.tick(local) {
                return;
            }
            for (j, m) in moments.iter_mut().enumerate() {
                *m += v * self.ff(k, j);
            }
            idx.push(c as u8);
            let seen = seen_nonzero || v != 0;
            if self.viable(k, moments) {
                if k == self.n {
                    if seen {
                        let mu = self.leaf_multiplicity(idx, t);
                        local.record(mu, idx, self.cap);
                    }
                } else {
                    self.dfs(k + 1, idx, moments, seen, t, local);
                }
            }
            idx.pop();
            for (j, m) in moments.iter_mut().enumerate() {
                *m -= v * self.ff(k, j);
            }
        }
    }

    /// Admissible prefixes of length `min(2, n+1)` in exploration order.
    fn prefixes(&self) -> Vec<Vec<u8>> {
        let mut out = Vec::new();
        for (c0, &v0) in self.vals.iter().enumerate() {
            if !self.allowed(0, false, v0) {
                continue;
            }
            for (c1, &v1) in self.vals.iter().enumerate() {
                if self.allowed(1, v0 != 0, v1) {
                    out.push(vec![c0 as u8, c1 as u8]);
                }
            }
        }
        out
    }

    /// All vectors with multiplicity at least `t`, `t >= 1`.
    fn search_level(&self, t: usize) -> Result<Local> {
        let locals: Vec<Local> = self
            .prefixes()
            .into_par_iter()
            .map(|prefix| {
                let mut local = Local { nodes: 2, ..Local::default() };
                let mut moments = vec![0i128; t];
                let mut seen = false;
                for (k, &c) in prefix.iter().enumerate() {
                    let v = self.vals[c as usize];
                    seen |= v != 0;
                    for (j, m) in moments.iter_mut().enumerate() {
                        *m += v * self.ff(k, j);
                    }
                }
                let last = prefix.len() - 1;
                let mut idx = prefix.clone();
                if self.viable(last, &moments) {
                    if last < self.n {
                        self.dfs(last + 1, &mut idx, &mut moments, seen, t, &mut local);
                    } else if seen {
                        local.record(self.leaf_multiplicity(&idx, t), &idx, self.cap);
                    }
                }
                local
            })
            .collect();
        if self.aborted.load(Ordering::Relaxed) {
            return Err(Error::InstanceTooLarge(format!(
                "node limit {} exceeded",
                self.max_nodes
            )));
        }
        let nodes = locals.iter().map(|l| l.nodes).sum();
        let best = locals.iter().filter_map(|l| l.best).max();
        let mut merged = Local { best, nodes, ..Local::default() };
        for l in locals.into_iter().filter(|l| l.best == best && best.is_some()) {
            merged.count += l.count;
            let room = self.cap - merged.witnesses.len();
            merged.witnesses.extend(l.witnesses.into_iter().take(room));
        }
        Ok(merged)
    }

    /// First vectors in exploration order when no vector vanishes at 1.
    fn first_vectors(&self, k: usize, idx: &mut Vec<u8>, seen: bool, out: &mut Vec<Vec<u8>>) {
        for (c, &v) in self.vals.iter().enumerate() {
            if out.len() >= self.cap {
                return;
            }
            if !self.allowed(k, seen, v) {
                continue;
            }
            idx.push(c as u8);
            if k == self.n {
                if seen || v != 0 {
                    out.push(idx.clone());
                }
            } else {
                self.first_vectors(k + 1, idx, seen || v != 0, out);
            }
            idx.pop();
        }
    }

    fn nonzero_vector_count(&self) -> u64 {
        let a = self.vals.len() as u64;
        let has_zero = self.vals.contains(&0);
        let total = if self.require_a0 {
            (a - u64::from(has_zero)) * a.pow(self.n as u32)
        } else {
            a.pow(self.n as u32 + 1) - u64::from(has_zero)
        };
        if self.canonical {
            total / 2
        } else {
            total
        }
    }
}

/// Exact maximum multiplicity of the zero at 1 over the instance.
pub fn search_max_multiplicity(prob: &SearchProblem) -> Result<SearchResult> {
    let n = prob.n;
    let space = (prob.alphabet.len() as u128).checked_pow(n as u32 + 1);
    if space.is_none_or(|s| s > MAX_SPACE) {
        return Err(Error::InstanceTooLarge(format!(
            "{}^{} coefficient vectors",
            prob.alphabet.len(),
            n + 1
        )));
    }
    if prob.require_a0_nonzero && prob.alphabet.iter().all(Zero::is_zero) {
        return Err(Error::ParameterDomain("a_0 cannot be nonzero".into()));
    }
    let cap = prob.cap()?;
    // One level above the cap so the cap itself is tested, not assumed.
    let t_start = (cap + 1).min(n);
    let tree = Tree::build(prob, t_start)?;
    let mut nodes = 0;
    for t in (1..=t_start).rev() {
        let level = tree.search_level(t)?;
        nodes += level.nodes;
        if let Some(mu) = level.best {
            return Ok(SearchResult {
                mu_max: mu,
                witnesses: to_values(prob, &level.witnesses),
                witness_count: level.count,
                nodes_explored: nodes,
                bound_used: cap,
                sign_reduced: tree.canonical,
            });
        }
    }
    let mut first = Vec::new();
    tree.first_vectors(0, &mut Vec::new(), false, &mut first);
    Ok(SearchResult {
        mu_max: 0,
        witnesses: to_values(prob, &first),
        witness_count: tree.nonzero_vector_count(),
        nodes_explored: nodes,
        bound_used: cap,
        sign_reduced: tree.canonical,
    })
}

fn to_values(prob: &SearchProblem, idx: &[Vec<u8>]) -> Vec<Vec<BigRational>> {
    idx.iter()
        .map(|w| w.iter().map(|&c| prob.alphabet[c as usize].clone()).collect())
        .collect()
}

/// Checks `claimed_mu` against both the moment detector and repeated
/// synthetic division at 1.
pub fn verify_witness(coeffs: &[BigRational], claimed_mu: usize) -> bool {
    let Ok(v) = ExpansionVector::monomial(coeffs.to_vec()) else {
        return false;
    };
    let Ok(by_moments) = multiplicity_from_coeffs(&v) else {
        return false;
    };
    let Ok(by_division) = multiplicity_at(&DensePoly::new(coeffs.to_vec()), &rat(1)) else {
        return false;
    };
    by_moments == claimed_mu && by_division == claimed_mu
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TableRow {
    pub n: usize,
    pub mu_star: usize,
    /// `max_mu_for_norm(n, linf, B)` with `B` from the alphabet.
    pub cap: usize,
    /// `2 sqrt(n ln 2)`.
    pub envelope: f64,
}

/// Searched optimum against the a-priori cap and the asymptotic envelope, `a_0 != 0`.
pub fn bound_vs_search_table(
    n_range: std::ops::RangeInclusive<usize>,
    alphabet: &[BigRational],
) -> Result<Vec<TableRow>> {
    n_range
        .map(|n| {
            let prob = SearchProblem::new(n, alphabet.to_vec())?;
            let res = search_max_multiplicity(&prob)?;
            Ok(TableRow {
                n,
                mu_star: res.mu_max,
                cap: res.bound_used,
                envelope: 2.0 * (n as f64 * std::f64::consts::LN_2).sqrt(),
            })
        })
        .collect()
}
