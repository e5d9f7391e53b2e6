//! The eight necessary conditions on a minimal same-cell pair with `μ > 1`,
//! stated on the insertion tableaux `(P_x, P_w)`.

use std::collections::{HashSet, VecDeque};
use std::fmt;
use std::str::FromStr;

use crate::bruhat::le;
use crate::perm::Permutation;
use crate::rsk::{
    inverse_rsk_unchecked, is_tableau_word, knuth_applicable, recording_tableau, standard_tableaux,
    star, Tableau, WordKind,
};

/// A filter, numbered as in the list of necessary conditions.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Filter {
    /// 1: `D(P_w) ⊆ D(P_x)`.
    Descents = 1,
    /// 2: `(P_w, Q') > (P_x, Q')` for every `Q'`.
    AllComparable = 2,
    /// 3: `n - 1` sits strictly higher in `P_w`.
    TopLetter = 3,
    /// 4: row-word pattern on `k, k+1, k+2`.
    Pattern = 4,
    /// 5: no Knuth walk lowers the length difference.
    KnuthMin = 5,
    /// 6: as 5, through pairs of unchanged difference only.
    KnuthMinRestricted = 6,
    /// 7: odd length difference.
    Parity = 7,
    /// 8: no reduction to smaller tableau words of one shape.
    Irreducible = 8,
}

impl Filter {
    pub const ALL: [Filter; 8] = [
        Filter::Descents,
        Filter::AllComparable,
        Filter::TopLetter,
        Filter::Pattern,
        Filter::KnuthMin,
        Filter::KnuthMinRestricted,
        Filter::Parity,
        Filter::Irreducible,
    ];

    /// Checked during generation.
    pub const INCREMENTAL: [Filter; 4] = [
        Filter::Descents,
        Filter::TopLetter,
        Filter::Pattern,
        Filter::Irreducible,
    ];

    /// Applied after generation, cheapest first.
    pub const STEP_TWO: [Filter; 4] = [
        Filter::Parity,
        Filter::KnuthMinRestricted,
        Filter::KnuthMin,
        Filter::AllComparable,
    ];

    pub fn number(self) -> u8 {
        self as u8
    }

    pub fn name(self) -> &'static str {
        match self {
            Filter::Descents => "descents",
            Filter::AllComparable => "all-comparable",
            Filter::TopLetter => "top-letter",
            Filter::Pattern => "pattern",
            Filter::KnuthMin => "knuth",
            Filter::KnuthMinRestricted => "knuth-restricted",
            Filter::Parity => "parity",
            Filter::Irreducible => "irreducible",
        }
    }
}

impl fmt::Display for Filter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Filter {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Filter::ALL
            .into_iter()
            .find(|f| f.name() == s || f.number().to_string() == s)
            .ok_or_else(|| format!("unknown filter {s:?} (use 1-8 or a filter name)"))
    }
}

/// A set of filters as a bitmask over their numbers.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct FilterSet(u16);

impl FilterSet {
    pub const fn none() -> Self {
        FilterSet(0)
    }

    pub fn all() -> Self {
        Filter::ALL.into_iter().collect()
    }

    pub fn contains(self, f: Filter) -> bool {
        self.0 >> f.number() & 1 == 1
    }

    pub fn insert(&mut self, f: Filter) {
        self.0 |= 1 << f.number();
    }

    pub fn remove(&mut self, f: Filter) {
        self.0 &= !(1 << f.number());
    }

    pub fn without(mut self, f: Filter) -> Self {
        self.remove(f);
        self
    }

    pub fn iter(self) -> impl Iterator<Item = Filter> {
        Filter::ALL.into_iter().filter(move |&f| self.contains(f))
    }
}

impl FromIterator<Filter> for FilterSet {
    fn from_iter<T: IntoIterator<Item = Filter>>(iter: T) -> Self {
        let mut set = FilterSet::none();
        for f in iter {
            set.insert(f);
        }
        set
    }
}

impl fmt::Debug for FilterSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter().map(Filter::number)).finish()
    }
}

/// Tableaux `P_x`, `P_w` of one shape, with the filters they have passed.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CandidatePair {
    pub p_x: Tableau,
    pub p_w: Tableau,
    pub passed: FilterSet,
}

impl CandidatePair {
    pub fn new(p_x: Tableau, p_w: Tableau) -> Self {
        assert_eq!(p_x.shape(), p_w.shape(), "candidate tableaux must share a shape");
        CandidatePair {
            p_x,
            p_w,
            passed: FilterSet::none(),
        }
    }

    /// The column words, a pair in one left cell.
    pub fn words(&self) -> (Permutation, Permutation) {
        (self.p_x.column_word(), self.p_w.column_word())
    }

    /// Runs `f` unless already recorded; records a pass.
    pub fn check(&mut self, f: Filter, word_kind: WordKind) -> bool {
        if self.passed.contains(f) {
            return true;
        }
        let ok = run_filter(f, self, word_kind);
        if ok {
            self.passed.insert(f);
        }
        ok
    }
}

impl fmt::Display for CandidatePair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {}", self.p_x, self.p_w)
    }
}

pub fn run_filter(f: Filter, pair: &CandidatePair, word_kind: WordKind) -> bool {
    match f {
        Filter::Descents => cond_descents(pair),
        Filter::AllComparable => cond_all_q_comparable(pair),
        Filter::TopLetter => cond_top_letter(pair),
        Filter::Pattern => cond_pattern(pair),
        Filter::KnuthMin => cond_knuth_min(pair, false),
        Filter::KnuthMinRestricted => cond_knuth_min(pair, true),
        Filter::Parity => cond_parity(pair),
        Filter::Irreducible => cond_irreducible(pair, word_kind),
    }
}

pub fn cond_descents(pair: &CandidatePair) -> bool {
    pair.p_x.descents().is_superset(pair.p_w.descents())
}

pub fn cond_top_letter(pair: &CandidatePair) -> bool {
    let n = pair.p_x.size();
    n > 0 && pair.p_w.height_of(n - 1) > pair.p_x.height_of(n - 1)
}

/// Whenever `k+2` precedes `k` in `rwd(P_w)`, the letters `k+2, k+1, k`
/// appear in that order in `rwd(P_x)`.
pub fn cond_pattern(pair: &CandidatePair) -> bool {
    let xi = pair.p_x.row_word().inverse();
    let wi = pair.p_w.row_word().inverse();
    (0..pair.p_x.size().saturating_sub(2)).all(|k| {
        wi.at(k + 2) > wi.at(k) || (xi.at(k + 2) < xi.at(k + 1) && xi.at(k + 1) < xi.at(k))
    })
}

/// Odd `l(w) - l(x)` for the column words. The parity is the same for every
/// recording tableau.
pub fn cond_parity(pair: &CandidatePair) -> bool {
    let (x, w) = pair.words();
    w.length().abs_diff(x.length()) % 2 == 1
}

/// Rejects when for some `i >= 1` the letters `0..i` occupy identical
/// positions in both words and what remains flattens to tableau words of
/// one shape.
pub fn cond_irreducible(pair: &CandidatePair, kind: WordKind) -> bool {
    let (x, w) = (kind.read(&pair.p_x), kind.read(&pair.p_w));
    let (xi, wi) = (x.inverse(), w.inverse());
    let n = x.degree();
    for i in 1..n {
        if xi.at(i - 1) != wi.at(i - 1) {
            break;
        }
        let shrink = |u: &Permutation| {
            let rest: Vec<u8> = u
                .images()
                .iter()
                .filter(|&&v| v as usize >= i)
                .map(|&v| v - i as u8)
                .collect();
            Permutation::from_raw(rest)
        };
        let tx = is_tableau_word(&shrink(&x), kind);
        let tw = is_tableau_word(&shrink(&w), kind);
        if let (Some(a), Some(b)) = (tx, tw) {
            if a.shape() == b.shape() {
                return false;
            }
        }
    }
    true
}

/// Breadth-first walk over simultaneous Knuth operators from the column
/// words; fails if some reachable pair has a smaller length difference. In
/// restricted mode only pairs with the starting difference are expanded.
pub fn cond_knuth_min(pair: &CandidatePair, restricted: bool) -> bool {
    let start = pair.words();
    let diff = |x: &Permutation, w: &Permutation| w.length() as i64 - x.length() as i64;
    let d0 = diff(&start.0, &start.1);
    let n = start.0.degree();
    let mut seen: HashSet<(Permutation, Permutation)> = HashSet::new();
    let mut queue = VecDeque::new();
    seen.insert(start.clone());
    queue.push_back(start);
    while let Some((x, w)) = queue.pop_front() {
        for k in 0..n.saturating_sub(2) {
            if !(knuth_applicable(k, &x) && knuth_applicable(k, &w)) {
                continue;
            }
            let next = (star(k, &x), star(k, &w));
            let d = diff(&next.0, &next.1);
            if d < d0 {
                return false;
            }
            if restricted && d != d0 {
                continue;
            }
            if seen.insert(next.clone()) {
                queue.push_back(next);
            }
        }
    }
    true
}

/// `inverse_rsk(P_x, Q') < inverse_rsk(P_w, Q')` for every standard `Q'`,
/// by enumerating the tableaux of the shape.
pub fn cond_all_q_comparable(pair: &CandidatePair) -> bool {
    standard_tableaux(&pair.p_x.shape()).iter().all(|q| {
        let x = inverse_rsk_unchecked(&pair.p_x, q);
        let w = inverse_rsk_unchecked(&pair.p_w, q);
        x != w && le(&x, &w)
    })
}

/// The same test, reaching every `Q'` by simultaneous Knuth moves on
/// positions from the column words.
pub fn cond_all_q_comparable_walk(pair: &CandidatePair) -> bool {
    let (x0, w0) = pair.words();
    let strictly_below = |x: &Permutation, w: &Permutation| x != w && le(x, w);
    if !strictly_below(&x0, &w0) {
        return false;
    }
    let n = x0.degree();
    let mut seen: HashSet<Permutation> = HashSet::new();
    let mut queue = VecDeque::new();
    seen.insert(x0.clone());
    queue.push_back((x0.inverse(), w0.inverse()));
    while let Some((xi, wi)) = queue.pop_front() {
        for k in 0..n.saturating_sub(2) {
            if !knuth_applicable(k, &xi) {
                continue;
            }
            let (nxi, nwi) = (star(k, &xi), star(k, &wi));
            let x = nxi.inverse();
            if !seen.insert(x.clone()) {
                continue;
            }
            if !strictly_below(&x, &nwi.inverse()) {
                return false;
            }
            queue.push_back((nxi, nwi));
        }
    }
    debug_assert_eq!(
        seen.len(),
        standard_tableaux(&pair.p_x.shape()).len(),
        "walk from {} missed recording tableaux",
        recording_tableau(&pair.words().0)
    );
    true
}

/// Step 3: the `Q'` minimizing `l(w') - l(x')`, ties to the first in
/// enumeration order.
pub fn choose_recording(pair: &CandidatePair) -> (Tableau, Permutation, Permutation) {
    let mut best: Option<(i64, Tableau, Permutation, Permutation)> = None;
    for q in standard_tableaux(&pair.p_x.shape()) {
        let x = inverse_rsk_unchecked(&pair.p_x, &q);
        let w = inverse_rsk_unchecked(&pair.p_w, &q);
        let d = w.length() as i64 - x.length() as i64;
        if best.as_ref().is_none_or(|b| d < b.0) {
            best = Some((d, q, x, w));
        }
    }
    let (_, q, x, w) = best.expect("every shape has a tableau");
    (q, x, w)
}
