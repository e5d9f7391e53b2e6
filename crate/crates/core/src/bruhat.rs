//! Bruhat order through rank and difference functions, intervals, and
//! pair reduction.
//!
//! For a permutation `w` the rank function is `r_w(p, q) = #{i <= p : w(i) >= q}`
//! and `d_{x,w} = r_w - r_x`. Then `x <= w` exactly when `d_{x,w}` is
//! nonnegative everywhere. Outside the `n × n` window `0 <= p, q < n` the
//! difference function vanishes identically, so only that window is stored.

use std::collections::HashSet;
use std::fmt::Write as _;

use thiserror::Error;

use crate::perm::{check_degrees, digit_char, DescentSet, PermError, Permutation};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BruhatError {
    #[error(transparent)]
    Perm(#[from] PermError),
    #[error("{x} is not below {w} in Bruhat order")]
    Incomparable { x: Permutation, w: Permutation },
}

/// `r_w(p, q)` for arbitrary integers `p`, `q`.
pub fn rank(w: &Permutation, p: isize, q: isize) -> usize {
    if p < 0 {
        return 0;
    }
    let last = (p as usize).min(w.degree().saturating_sub(1));
    if w.degree() == 0 {
        return 0;
    }
    w.images()[..=last]
        .iter()
        .filter(|&&v| v as isize >= q)
        .count()
}

/// Row-major table of `r_w(p, q)` for `p in 0..n`, `q in 0..=n`.
pub(crate) fn rank_table(w: &Permutation) -> Vec<u16> {
    let n = w.degree();
    let stride = n + 1;
    let mut table = vec![0u16; n * stride];
    let mut counts = vec![0u16; stride];
    for p in 0..n {
        let v = w.at(p);
        for c in counts.iter_mut().take(v + 1) {
            *c += 1;
        }
        table[p * stride..(p + 1) * stride].copy_from_slice(&counts);
    }
    table
}

/// Bruhat comparison without the degree check.
pub(crate) fn le(x: &Permutation, w: &Permutation) -> bool {
    let n = x.degree();
    // diff[q] tracks d_{x,w}(p, q) as p advances.
    let mut diff = [0i16; 129];
    for p in 0..n {
        let (a, b) = (x.at(p), w.at(p));
        if a == b {
            continue;
        }
        if b > a {
            for d in &mut diff[a + 1..=b] {
                *d += 1;
            }
        } else {
            for d in &mut diff[b + 1..=a] {
                *d -= 1;
                if *d < 0 {
                    return false;
                }
            }
        }
    }
    true
}

/// `x <= w` in Bruhat order.
pub fn leq(x: &Permutation, w: &Permutation) -> Result<bool, PermError> {
    check_degrees(x, w)?;
    Ok(le(x, w))
}

/// The values `d_{x,w}(p, q)` on the window `0 <= p, q < n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DifferenceGrid {
    n: usize,
    values: Vec<i32>,
}

impl DifferenceGrid {
    pub fn degree(&self) -> usize {
        self.n
    }

    /// `d_{x,w}(p, q)` for any integers; zero off the stored window.
    pub fn get(&self, p: isize, q: isize) -> i32 {
        let n = self.n as isize;
        if p < 0 || q < 0 || p >= n || q >= n {
            return 0;
        }
        self.values[p as usize * self.n + q as usize]
    }

    pub fn rows(&self) -> impl Iterator<Item = &[i32]> {
        self.values.chunks(self.n.max(1)).take(self.n)
    }

    pub fn max(&self) -> i32 {
        self.values.iter().copied().max().unwrap_or(0)
    }

    pub fn is_nonnegative(&self) -> bool {
        self.values.iter().all(|&v| v >= 0)
    }

    /// Space-separated integer rows, one per position.
    pub fn dump(&self) -> String {
        let mut out = String::new();
        for row in self.rows() {
            let line: Vec<String> = row.iter().map(|v| v.to_string()).collect();
            out.push_str(&line.join(" "));
            out.push('\n');
        }
        out
    }
}

pub fn difference_grid(x: &Permutation, w: &Permutation) -> Result<DifferenceGrid, PermError> {
    check_degrees(x, w)?;
    let n = x.degree();
    let (rx, rw) = (rank_table(x), rank_table(w));
    let mut values = Vec::with_capacity(n * n);
    for p in 0..n {
        for q in 0..n {
            let i = p * (n + 1) + q;
            values.push(rw[i] as i32 - rx[i] as i32);
        }
    }
    Ok(DifferenceGrid { n, values })
}

/// Positions `i` with `x(i) = w(i)` and `d_{x,w}(i, x(i)) = 0`, paired with
/// their common value. Every `z` in `[x, w]` agrees with `x` there.
pub fn forced_positions(
    x: &Permutation,
    w: &Permutation,
) -> Result<Vec<(usize, usize)>, BruhatError> {
    if !leq(x, w)? {
        return Err(BruhatError::Incomparable {
            x: x.clone(),
            w: w.clone(),
        });
    }
    Ok(forced_unchecked(x, w))
}

fn forced_unchecked(x: &Permutation, w: &Permutation) -> Vec<(usize, usize)> {
    let (rx, rw) = (rank_table(x), rank_table(w));
    let stride = x.degree() + 1;
    (0..x.degree())
        .filter(|&i| {
            let v = x.at(i);
            v == w.at(i) && rx[i * stride + v] == rw[i * stride + v]
        })
        .map(|i| (i, x.at(i)))
        .collect()
}

/// `Δ(x, w)`: positions that are not forced, in increasing order.
pub fn delta(x: &Permutation, w: &Permutation) -> Result<Vec<usize>, PermError> {
    check_degrees(x, w)?;
    Ok(delta_unchecked(x, w))
}

pub(crate) fn delta_unchecked(x: &Permutation, w: &Permutation) -> Vec<usize> {
    let forced: HashSet<usize> = forced_unchecked(x, w).into_iter().map(|(i, _)| i).collect();
    (0..x.degree()).filter(|i| !forced.contains(i)).collect()
}

/// The pair `(x̃, w̃)` obtained by flattening `x` and `w` on `Δ(x, w)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReducedPair {
    pub x_tilde: Permutation,
    pub w_tilde: Permutation,
    pub kept_positions: Vec<usize>,
}

pub fn reduce_pair(x: &Permutation, w: &Permutation) -> Result<ReducedPair, PermError> {
    check_degrees(x, w)?;
    Ok(reduce_unchecked(x, w))
}

pub(crate) fn reduce_unchecked(x: &Permutation, w: &Permutation) -> ReducedPair {
    let kept = delta_unchecked(x, w);
    ReducedPair {
        x_tilde: x.restrict(&kept),
        w_tilde: w.restrict(&kept),
        kept_positions: kept,
    }
}

/// `x <= w` with `D_R(x) ⊇ D_R(w)` and `D_L(x) ⊇ D_L(w)`.
pub fn is_flush(x: &Permutation, w: &Permutation) -> Result<bool, PermError> {
    Ok(leq(x, w)?
        && x.right_descents().is_superset(w.right_descents())
        && x.left_descents().is_superset(w.left_descents()))
}

/// Elements `z` with `l(z) = l(w) - 1` and `z < w`: the words obtained from
/// `w` by swapping an inversion `w(i) > w(j)` with no value strictly between
/// them at a position strictly between them.
pub fn coatoms(w: &Permutation) -> Vec<Permutation> {
    let n = w.degree();
    let mut out = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            let (a, b) = (w.at(i), w.at(j));
            if a > b && (i + 1..j).all(|k| !(b < w.at(k) && w.at(k) < a)) {
                out.push(w.swap_positions(i, j));
            }
        }
    }
    out
}

/// Pairs `(x, w)` from `elements` with `w = s·x` and `l(w) = l(x) + 1`.
pub fn weak_left_covers(elements: &[Permutation]) -> Vec<(Permutation, Permutation)> {
    let members: HashSet<&Permutation> = elements.iter().collect();
    let mut out = Vec::new();
    for x in elements {
        for s in 0..x.degree().saturating_sub(1) {
            if x.has_left_descent(s) {
                continue;
            }
            let w = x.swap_values(s, s + 1);
            if members.contains(&w) {
                out.push((x.clone(), w));
            }
        }
    }
    out
}

/// Depth-first enumeration of `{z : lower <= z <= upper}`, optionally
/// restricted to `z` whose descent sets contain given sets.
///
/// Positions are filled left to right; a partial word is abandoned as soon
/// as a completed prefix row violates `r_lower <= r_z <= r_upper`, a forced
/// position disagrees, or a required descent can no longer occur.
pub struct IntervalIter {
    n: usize,
    lower: Vec<u16>,
    upper: Vec<u16>,
    forced: Vec<Option<u8>>,
    right: DescentSet,
    left: DescentSet,
    z: Vec<u8>,
    used: u128,
    // counts[p * (n + 1) + q] = r_z(p, q) for the current prefix.
    counts: Vec<u16>,
    next_value: Vec<u8>,
    placed: Vec<bool>,
    level: usize,
    state: IterState,
}

#[derive(PartialEq, Eq)]
enum IterState {
    Running,
    Done,
    EmptyPending,
}

impl IntervalIter {
    pub fn new(lower: &Permutation, upper: &Permutation) -> Result<Self, PermError> {
        Self::with_descents(lower, upper, DescentSet::empty(), DescentSet::empty())
    }

    /// Only yields `z` with `D_R(z) ⊇ right` and `D_L(z) ⊇ left`.
    pub fn with_descents(
        lower: &Permutation,
        upper: &Permutation,
        right: DescentSet,
        left: DescentSet,
    ) -> Result<Self, PermError> {
        check_degrees(lower, upper)?;
        let n = lower.degree();
        let comparable = le(lower, upper);
        let mut forced = vec![None; n];
        if comparable {
            for (i, v) in forced_unchecked(lower, upper) {
                forced[i] = Some(v as u8);
            }
        }
        let state = match (comparable, n) {
            (false, _) => IterState::Done,
            (true, 0) => IterState::EmptyPending,
            (true, _) => IterState::Running,
        };
        Ok(IntervalIter {
            n,
            lower: rank_table(lower),
            upper: rank_table(upper),
            forced,
            right,
            left,
            z: vec![0; n],
            used: 0,
            counts: vec![0; n * (n + 1)],
            next_value: vec![0; n + 1],
            placed: vec![false; n],
            level: 0,
            state,
        })
    }

    fn is_used(&self, v: usize) -> bool {
        self.used >> v & 1 == 1
    }

    fn try_place(&mut self, p: usize, v: usize) -> bool {
        let n = self.n;
        if self.is_used(v) {
            return false;
        }
        if let Some(f) = self.forced[p] {
            if f as usize != v {
                return false;
            }
        }
        if p > 0 && self.right.contains(p - 1) && self.z[p - 1] as usize <= v {
            return false;
        }
        // A required right descent at p needs some smaller value left over.
        if self.right.contains(p) && (0..v).all(|u| self.is_used(u)) {
            return false;
        }
        // s_v ∈ D_L(z) needs v+1 before v; s_{v-1} ∈ D_L(z) needs v before v-1.
        if self.left.contains(v) && !self.is_used(v + 1) {
            return false;
        }
        if v > 0 && self.left.contains(v - 1) && self.is_used(v - 1) {
            return false;
        }
        let stride = n + 1;
        let row = p * stride;
        for q in 0..n {
            let prev = if p == 0 {
                0
            } else {
                self.counts[row - stride + q]
            };
            let c = prev + u16::from(q <= v);
            if c < self.lower[row + q] || c > self.upper[row + q] {
                return false;
            }
            self.counts[row + q] = c;
        }
        self.z[p] = v as u8;
        self.used |= 1 << v;
        self.placed[p] = true;
        true
    }
}

impl Iterator for IntervalIter {
    type Item = Permutation;

    fn next(&mut self) -> Option<Permutation> {
        match self.state {
            IterState::Done => return None,
            IterState::EmptyPending => {
                self.state = IterState::Done;
                return Some(Permutation::identity(0));
            }
            IterState::Running => {}
        }
        loop {
            let p = self.level;
            if p == self.n {
                let out = Permutation::from_raw(self.z.clone());
                self.level -= 1;
                return Some(out);
            }
            if self.placed[p] {
                self.used &= !(1 << self.z[p]);
                self.placed[p] = false;
            }
            let mut advanced = false;
            while (self.next_value[p] as usize) < self.n {
                let v = self.next_value[p] as usize;
                self.next_value[p] += 1;
                if self.try_place(p, v) {
                    advanced = true;
                    break;
                }
            }
            if advanced {
                self.level += 1;
                if self.level < self.n {
                    self.next_value[self.level] = 0;
                }
            } else if p == 0 {
                self.state = IterState::Done;
                return None;
            } else {
                self.level -= 1;
            }
        }
    }
}

/// All of `[x, w]`; empty when `x` is not below `w`.
pub fn enumerate_interval(x: &Permutation, w: &Permutation) -> Result<IntervalIter, PermError> {
    IntervalIter::new(x, w)
}

/// Text picture of `d_{x,w}`: one line per position, one glyph per value.
///
/// `●` marks `x(i)`, `○` marks `w(i)`, `◉` a shared entry (a capitol); other
/// cells show `d_{x,w}` in the digit alphabet, with `.` for zero.
pub fn render_picture(x: &Permutation, w: &Permutation) -> Result<String, PermError> {
    let grid = difference_grid(x, w)?;
    let n = x.degree();
    let mut out = String::new();
    for p in 0..n {
        for q in 0..n {
            let glyph = match (x.at(p) == q, w.at(p) == q) {
                (true, true) => '◉',
                (true, false) => '●',
                (false, true) => '○',
                _ => match grid.get(p as isize, q as isize) {
                    0 => '.',
                    d if d < 0 => '-',
                    d => digit_char(d as usize).unwrap_or('+'),
                },
            };
            out.push(glyph);
        }
        let _ = writeln!(out);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> Permutation {
        s.parse().unwrap()
    }

    /// `x <= w` via the transitive closure of `z < z·t` with `l(z·t) = l(z)+1`.
    fn cover_closure(n: usize) -> HashSet<(Permutation, Permutation)> {
        let all: Vec<_> = Permutation::all(n).collect();
        let mut up: std::collections::HashMap<Permutation, Vec<Permutation>> = Default::default();
        for z in &all {
            let mut covers = Vec::new();
            for i in 0..n {
                for j in i + 1..n {
                    let t = z.swap_positions(i, j);
                    if t.length() == z.length() + 1 {
                        covers.push(t);
                    }
                }
            }
            up.insert(z.clone(), covers);
        }
        let mut rel = HashSet::new();
        for x in &all {
            let mut stack = vec![x.clone()];
            let mut seen = HashSet::new();
            while let Some(z) = stack.pop() {
                if seen.insert(z.clone()) {
                    stack.extend(up[&z].iter().cloned());
                }
            }
            for z in seen {
                rel.insert((x.clone(), z));
            }
        }
        rel
    }

    #[test]
    fn ranks() {
        assert_eq!(rank(&Permutation::identity(3), 2, 0), 3);
        assert_eq!(rank(&p("523140"), 0, 3), 1);
        for q in -2..8 {
            assert_eq!(rank(&p("523140"), -1, q), 0);
        }
        assert_eq!(rank(&p("523140"), 9, 3), 3);
    }

    #[test]
    fn leq_matches_cover_closure() {
        for n in 1..=5 {
            let rel = cover_closure(n);
            for x in Permutation::all(n) {
                for w in Permutation::all(n) {
                    assert_eq!(
                        leq(&x, &w).unwrap(),
                        rel.contains(&(x.clone(), w.clone())),
                        "{x} {w}"
                    );
                }
            }
        }
    }

    #[test]
    fn leq_basics() {
        let w = p("523140");
        assert!(leq(&w, &w).unwrap());
        assert!(leq(&p("204135"), &w).unwrap());
        assert!(leq(&p("4321098765"), &p("9467182350")).unwrap());
        assert!(!leq(&p("10"), &p("01")).unwrap());
        assert!(leq(&p("01"), &p("012")).is_err());
    }

    #[test]
    fn partial_order_and_inverse_symmetry_on_s5() {
        let all: Vec<_> = Permutation::all(5).collect();
        for x in &all {
            for w in &all {
                let xw = le(x, w);
                assert_eq!(xw, le(&x.inverse(), &w.inverse()));
                if xw && le(w, x) {
                    assert_eq!(x, w);
                }
            }
        }
        for x in all.iter().step_by(7) {
            for y in &all {
                if !le(x, y) {
                    continue;
                }
                for z in all.iter().step_by(3) {
                    if le(y, z) {
                        assert!(le(x, z));
                    }
                }
            }
        }
    }

    #[test]
    fn difference_grid_of_figure_pair() {
        let (x, w) = (p("204135"), p("523140"));
        let grid = difference_grid(&x, &w).unwrap();
        assert!(grid.is_nonnegative());
        // This pair only reaches level 1; the S10 pair shows deeper shading.
        let levels: HashSet<i32> = grid.rows().flatten().copied().filter(|&d| d > 0).collect();
        assert_eq!(levels, HashSet::from([1]));
        let deep = difference_grid(&p("4321098765"), &p("9467182350")).unwrap();
        assert!(deep.is_nonnegative() && deep.max() >= 2);
        let same = difference_grid(&w, &w).unwrap();
        assert!(same.rows().flatten().all(|&d| d == 0));
        assert_eq!(grid.get(-1, 3), 0);
        assert_eq!(grid.get(3, 6), 0);
    }

    #[test]
    fn forced_positions_and_delta() {
        let (x, w) = (p("6491082753"), p("9461782350"));
        let forced: Vec<usize> = forced_positions(&x, &w).unwrap().iter().map(|f| f.0).collect();
        assert_eq!(forced, vec![1, 3, 5, 8]);
        assert_eq!(delta(&x, &w).unwrap(), vec![0, 2, 4, 6, 7, 9]);
        // Forced capitols sit in unshaded cells.
        let grid = difference_grid(&x, &w).unwrap();
        for i in forced {
            assert_eq!(grid.get(i as isize, x.at(i) as isize), 0);
        }
        assert_eq!(
            forced_positions(&p("315042"), &p("534102")).unwrap(),
            vec![(5, 2)]
        );
        let w = p("3120");
        assert_eq!(forced_positions(&w, &w).unwrap().len(), 4);
        assert!(matches!(
            forced_positions(&p("3120"), &p("0123")),
            Err(BruhatError::Incomparable { .. })
        ));
    }

    #[test]
    fn reduction_of_printed_pair() {
        let r = reduce_pair(&p("6491082753"), &p("9461782350")).unwrap();
        assert_eq!(r.x_tilde, p("350142"));
        assert_eq!(r.w_tilde, p("534120"));
        assert_eq!(r.kept_positions, vec![0, 2, 4, 6, 7, 9]);
        let again = reduce_pair(&r.x_tilde, &r.w_tilde).unwrap();
        assert_eq!((again.x_tilde, again.w_tilde), (r.x_tilde, r.w_tilde));
        let w = p("2031");
        let trivial = reduce_pair(&w, &w).unwrap();
        assert_eq!(trivial.x_tilde.degree(), 0);
        assert!(trivial.kept_positions.is_empty());
    }

    #[test]
    fn reduction_preserves_length_difference_and_is_idempotent() {
        let all: Vec<_> = Permutation::all(6).collect();
        for (i, x) in all.iter().enumerate().step_by(11) {
            for w in all.iter().skip(i % 5).step_by(5) {
                if !le(x, w) {
                    continue;
                }
                let r = reduce_unchecked(x, w);
                assert_eq!(
                    w.length() - x.length(),
                    r.w_tilde.length() - r.x_tilde.length()
                );
                let again = reduce_unchecked(&r.x_tilde, &r.w_tilde);
                assert_eq!(again.x_tilde, r.x_tilde);
                assert_eq!(again.w_tilde, r.w_tilde);
            }
        }
    }

    #[test]
    fn interval_enumeration_matches_filter() {
        let all: Vec<_> = Permutation::all(5).collect();
        for x in &all {
            for w in all.iter().step_by(3) {
                let got: Vec<_> = enumerate_interval(x, w).unwrap().collect();
                let want: Vec<_> = all.iter().filter(|z| le(x, z) && le(z, w)).cloned().collect();
                assert_eq!(got, want, "[{x}, {w}]");
            }
        }
        let e = Permutation::identity(4);
        assert_eq!(enumerate_interval(&e, &Permutation::longest(4)).unwrap().count(), 24);
        let w = p("2301");
        assert_eq!(enumerate_interval(&w, &w).unwrap().collect::<Vec<_>>(), vec![w]);
        let empty = Permutation::identity(0);
        assert_eq!(enumerate_interval(&empty, &empty).unwrap().count(), 1);
    }

    #[test]
    fn interval_respects_forced_positions_and_descent_filters() {
        let all: Vec<_> = Permutation::all(6).collect();
        for x in all.iter().step_by(37) {
            for w in all.iter().step_by(13) {
                if !le(x, w) {
                    continue;
                }
                let forced = forced_unchecked(x, w);
                let right = w.right_descents();
                let left = w.left_descents();
                let got: Vec<_> = IntervalIter::with_descents(x, w, right, left).unwrap().collect();
                let want: Vec<_> = enumerate_interval(x, w)
                    .unwrap()
                    .filter(|z| {
                        z.right_descents().is_superset(right) && z.left_descents().is_superset(left)
                    })
                    .collect();
                assert_eq!(got, want);
                for z in enumerate_interval(x, w).unwrap() {
                    assert!(forced.iter().all(|&(i, v)| z.at(i) == v));
                }
            }
        }
    }

    #[test]
    fn flush_checks() {
        let w = p("24301");
        assert!(is_flush(&w, &w).unwrap());
        // No element of [20413, 24301] carries D_R ⊇ {s0, s1, s2}.
        let req: DescentSet = [0, 1, 2].into_iter().collect();
        let x = p("20413");
        assert_eq!(
            IntervalIter::with_descents(&x, &w, req, DescentSet::empty())
                .unwrap()
                .count(),
            0
        );
        assert_eq!(enumerate_interval(&x, &w).unwrap().filter(|z| z.at(0) == 2).count(),
            enumerate_interval(&x, &w).unwrap().count());
    }

    #[test]
    fn coatoms_have_colength_one() {
        for w in Permutation::all(5) {
            let mut got = coatoms(&w);
            got.sort();
            let mut want: Vec<_> = Permutation::all(5)
                .filter(|z| z.length() + 1 == w.length() && le(z, &w))
                .collect();
            want.sort();
            assert_eq!(got, want);
        }
    }

    #[test]
    fn weak_covers() {
        assert!(weak_left_covers(&[p("2013")]).is_empty());
        let s3: Vec<_> = Permutation::all(3).collect();
        let e = Permutation::identity(3);
        let from_e: Vec<_> = weak_left_covers(&s3).into_iter().filter(|(x, _)| *x == e).collect();
        assert_eq!(from_e.len(), 2);
        let s4: Vec<_> = Permutation::all(4).collect();
        let mut brute = 0;
        for x in &s4 {
            for s in 0..3 {
                if x.left_mult_s(s).unwrap().length() == x.length() + 1 {
                    brute += 1;
                }
            }
        }
        assert_eq!(weak_left_covers(&s4).len(), brute);
    }

    #[test]
    fn pictures() {
        let w = p("3021");
        let same = render_picture(&w, &w).unwrap();
        assert!(same.chars().all(|c| c == '◉' || c == '.' || c == '\n'));
        assert_eq!(same.matches('◉').count(), 4);

        let (x, w) = (p("204135"), p("523140"));
        let pic = render_picture(&x, &w).unwrap();
        let grid = difference_grid(&x, &w).unwrap();
        for (p_, line) in pic.lines().enumerate() {
            for (q, c) in line.chars().enumerate() {
                if x.at(p_) != q && w.at(p_) != q {
                    let d = grid.get(p_ as isize, q as isize);
                    let expect = if d == 0 { '.' } else { digit_char(d as usize).unwrap() };
                    assert_eq!(c, expect);
                }
            }
        }

        let (x, w) = (p("4321098765"), p("9467182350"));
        let pic: Vec<Vec<char>> = render_picture(&x, &w).unwrap().lines().map(|l| l.chars().collect()).collect();
        for (i, v) in forced_positions(&x, &w).unwrap() {
            assert_eq!(pic[i][v], '◉');
        }
    }
}
