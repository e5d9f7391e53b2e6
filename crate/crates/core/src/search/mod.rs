//! Search for a minimal same-cell pair `(x, w)` with `μ(x, w) > 1`.
//!
//! Step 1 grows pairs of tableaux of one shape letter by letter, rejecting
//! early on filters 1, 3, 4 and 8. Step 2 applies filters 7, 6, 5 and 2 in
//! that order. Step 3 picks the recording tableau minimizing the length
//! difference, and step 4 keeps the pairs with `μ > 1`.

mod filters;

use std::fmt;
use std::path::PathBuf;

use num_bigint::BigUint;
use rayon::prelude::*;
use thiserror::Error;

use crate::kl::{KlEngine, KlError};
use crate::perm::Permutation;
use crate::rsk::{partitions, Shape, Tableau, WordKind};
use crate::scalar::Coefficient;

pub use filters::{
    choose_recording, cond_all_q_comparable, cond_all_q_comparable_walk, cond_descents,
    cond_irreducible, cond_knuth_min, cond_parity, cond_pattern, cond_top_letter, run_filter,
    CandidatePair, Filter, FilterSet,
};

#[derive(Debug, Error)]
pub enum SearchError {
    #[error("search needs 2 <= n <= 36, got {0}")]
    BadDegree(usize),
    #[error("cannot start {0} worker threads")]
    Threads(usize),
    #[error(transparent)]
    Kl(#[from] KlError),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SearchConfig {
    pub n: usize,
    /// Filters to apply; a disabled filter passes everything.
    pub filters: FilterSet,
    /// Worker threads; `None` uses the global pool.
    pub threads: Option<usize>,
    /// Persistent KL cache used by step 4.
    pub cache: Option<PathBuf>,
    /// Reading word for filter 8.
    pub word_kind: WordKind,
    /// Check filter 2 by Knuth walks instead of enumerating `Q'`.
    pub q_walk: bool,
}

impl SearchConfig {
    pub fn new(n: usize) -> Self {
        SearchConfig {
            n,
            filters: FilterSet::all(),
            threads: None,
            cache: None,
            word_kind: WordKind::Column,
            q_walk: false,
        }
    }
}

/// A pair that reached step 4, with the chosen recording tableau.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Survivor<C> {
    pub pair: CandidatePair,
    pub q: Tableau,
    pub x: Permutation,
    pub w: Permutation,
    pub length_difference: i64,
    pub mu: C,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SearchReport<C> {
    pub n: usize,
    /// `(stage, pairs remaining)`; starts with the unfiltered count.
    pub stages: Vec<(String, BigUint)>,
    /// Pairs that passed step 2.
    pub after_step_two: Vec<CandidatePair>,
    /// Step-3 choices for every step-2 survivor.
    pub evaluated: Vec<Survivor<C>>,
}

impl<C: Coefficient> SearchReport<C> {
    /// Pairs with `μ > 1`.
    pub fn survivors(&self) -> impl Iterator<Item = &Survivor<C>> {
        self.evaluated.iter().filter(|s| s.mu > C::one())
    }

    pub fn count(&self, stage: &str) -> Option<&BigUint> {
        self.stages.iter().find(|(s, _)| s == stage).map(|(_, c)| c)
    }
}

impl<C: Coefficient> fmt::Display for SearchReport<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "search n={}", self.n)?;
        for (stage, count) in &self.stages {
            writeln!(f, "stage {stage} {count}")?;
        }
        for s in &self.evaluated {
            writeln!(
                f,
                "pair {} q={} x={} w={} diff={} mu={}",
                s.pair, s.q, s.x, s.w, s.length_difference, s.mu
            )?;
        }
        let survivors = self.survivors().count();
        writeln!(f, "survivors {survivors}")
    }
}

/// Partial fillings of one shape, as the row index of each placed letter.
struct Grower<'a> {
    parts: &'a [usize],
    n: usize,
    filters: FilterSet,
    word_kind: WordKind,
    hx: Vec<u8>,
    hw: Vec<u8>,
    len_x: Vec<usize>,
    len_w: Vec<usize>,
    out: Vec<CandidatePair>,
}

impl Grower<'_> {
    fn open_rows(&self, lens: &[usize]) -> Vec<usize> {
        (0..self.parts.len())
            .filter(|&r| lens[r] < self.parts[r] && (r == 0 || lens[r - 1] > lens[r]))
            .collect()
    }

    /// Filters 1 and 4 only look at letters up to `m`, and placing larger
    /// letters never changes their verdict.
    fn prefix_ok(&self, m: usize) -> bool {
        let (hx, hw) = (&self.hx, &self.hw);
        if m >= 1 && self.filters.contains(Filter::Descents) && hw[m] > hw[m - 1] && hx[m] <= hx[m - 1]
        {
            return false;
        }
        if m >= 2 && self.filters.contains(Filter::Pattern) {
            let k = m - 2;
            if hw[k + 2] > hw[k] && !(hx[k + 2] > hx[k + 1] && hx[k + 1] > hx[k]) {
                return false;
            }
        }
        true
    }

    fn tableau(&self, heights: &[u8]) -> Tableau {
        let mut rows = vec![Vec::new(); self.parts.len()];
        for (v, &h) in heights.iter().enumerate() {
            rows[h as usize].push(v as u8);
        }
        Tableau::from_raw(rows)
    }

    fn grow(&mut self, m: usize) {
        if m == self.n {
            let top = self.n - 1;
            if self.filters.contains(Filter::TopLetter) && self.hw[top] <= self.hx[top] {
                return;
            }
            let mut pair = CandidatePair::new(self.tableau(&self.hx), self.tableau(&self.hw));
            for f in [Filter::Descents, Filter::TopLetter, Filter::Pattern] {
                if self.filters.contains(f) {
                    pair.passed.insert(f);
                }
            }
            if self.filters.contains(Filter::Irreducible) && !pair.check(Filter::Irreducible, self.word_kind)
            {
                return;
            }
            self.out.push(pair);
            return;
        }
        for rx in self.open_rows(&self.len_x) {
            for rw in self.open_rows(&self.len_w) {
                self.hx.push(rx as u8);
                self.hw.push(rw as u8);
                if self.prefix_ok(m) {
                    self.len_x[rx] += 1;
                    self.len_w[rw] += 1;
                    self.grow(m + 1);
                    self.len_x[rx] -= 1;
                    self.len_w[rw] -= 1;
                }
                self.hx.pop();
                self.hw.pop();
            }
        }
    }
}

/// Step 1 for one shape: every same-shape pair passing the enabled
/// incremental filters, in lexicographic order of the two filling sequences.
pub fn generate_shape_pairs(shape: &Shape, filters: FilterSet, word_kind: WordKind) -> Vec<CandidatePair> {
    let mut g = Grower {
        parts: shape.parts(),
        n: shape.size(),
        filters,
        word_kind,
        hx: Vec::new(),
        hw: Vec::new(),
        len_x: vec![0; shape.height()],
        len_w: vec![0; shape.height()],
        out: Vec::new(),
    };
    if g.n > 0 {
        g.grow(0);
    }
    g.out
}

/// Step 1 over every shape of size `n`.
pub fn generate_pairs(n: usize, filters: FilterSet, word_kind: WordKind) -> Vec<CandidatePair> {
    partitions(n)
        .par_iter()
        .flat_map_iter(|shape| generate_shape_pairs(shape, filters, word_kind))
        .collect()
}

pub fn run_search_with<C: Coefficient>(
    config: &SearchConfig,
    engine: &KlEngine<C>,
) -> Result<SearchReport<C>, SearchError> {
    let n = config.n;
    if !(2..=36).contains(&n) {
        return Err(SearchError::BadDegree(n));
    }
    let work = || {
        let total: BigUint = partitions(n)
            .iter()
            .map(|s| {
                let f = s.count_tableaux();
                &f * &f
            })
            .sum();
        let mut stages = vec![("candidates".to_string(), total)];
        let mut pairs = generate_pairs(n, config.filters, config.word_kind);
        stages.push(("step1".to_string(), pairs.len().into()));
        for f in Filter::STEP_TWO {
            if config.filters.contains(f) {
                pairs = pairs
                    .into_par_iter()
                    .filter_map(|mut p| {
                        let ok = if f == Filter::AllComparable && config.q_walk {
                            cond_all_q_comparable_walk(&p)
                        } else {
                            run_filter(f, &p, config.word_kind)
                        };
                        ok.then(|| {
                            p.passed.insert(f);
                            p
                        })
                    })
                    .collect();
            }
            stages.push((f.name().to_string(), pairs.len().into()));
        }
        let evaluated: Vec<Survivor<C>> = pairs
            .par_iter()
            .map(|pair| {
                let (q, x, w) = choose_recording(pair);
                let mu = engine.mu_unchecked(&x, &w);
                Survivor {
                    pair: pair.clone(),
                    q,
                    length_difference: w.length() as i64 - x.length() as i64,
                    x,
                    w,
                    mu,
                }
            })
            .collect();
        let kept = evaluated.iter().filter(|s| s.mu > C::one()).count();
        stages.push(("mu".to_string(), kept.into()));
        SearchReport {
            n,
            stages,
            after_step_two: pairs,
            evaluated,
        }
    };
    match config.threads {
        Some(k) => {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(k)
                .build()
                .map_err(|_| SearchError::Threads(k))?;
            Ok(pool.install(work))
        }
        None => Ok(work()),
    }
}

/// Runs the pipeline, loading and saving the configured cache file.
pub fn run_search<C: Coefficient>(config: &SearchConfig) -> Result<SearchReport<C>, SearchError> {
    let engine = match &config.cache {
        Some(path) => KlEngine::open(path, Default::default())?,
        None => KlEngine::default(),
    };
    let report = run_search_with(config, &engine)?;
    if let Some(path) = &config.cache {
        engine.save(path)?;
    }
    Ok(report)
}
