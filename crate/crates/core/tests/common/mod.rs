//! Reference implementations for the integration tests. Nothing here calls
//! into the library except to convert results for comparison; permutations
//! are plain `Vec<u8>` in one-line notation.

#![allow(dead_code)]

use std::collections::{BTreeMap, BTreeSet, HashMap, HashSet, VecDeque};

pub type Perm = Vec<u8>;
/// Rows from the bottom up.
pub type Tab = Vec<Vec<u8>>;

pub fn all_perms(n: usize) -> Vec<Perm> {
    let mut out = Vec::new();
    let mut cur: Perm = (0..n as u8).collect();
    loop {
        out.push(cur.clone());
        // next lexicographic permutation
        let Some(i) = (1..n).rev().find(|&i| cur[i - 1] < cur[i]) else {
            return out;
        };
        let j = (i..n).rev().find(|&j| cur[j] > cur[i - 1]).unwrap();
        cur.swap(i - 1, j);
        cur[i..].reverse();
    }
}

pub fn length(w: &[u8]) -> usize {
    let mut inv = 0;
    for i in 0..w.len() {
        for j in i + 1..w.len() {
            if w[i] > w[j] {
                inv += 1;
            }
        }
    }
    inv
}

pub fn inverse(w: &[u8]) -> Perm {
    let mut out = vec![0; w.len()];
    for (i, &v) in w.iter().enumerate() {
        out[v as usize] = i as u8;
    }
    out
}

/// Tableau criterion: every prefix of `x`, sorted, is entrywise at most the
/// same prefix of `w`, sorted.
pub fn bruhat_le(x: &[u8], w: &[u8]) -> bool {
    let n = x.len();
    for k in 1..n {
        let mut a = x[..k].to_vec();
        let mut b = w[..k].to_vec();
        a.sort_unstable();
        b.sort_unstable();
        if a.iter().zip(&b).any(|(p, q)| p > q) {
            return false;
        }
    }
    true
}

// ---- polynomials as ascending coefficient vectors ----

fn trim(mut p: Vec<i64>) -> Vec<i64> {
    while p.last() == Some(&0) {
        p.pop();
    }
    p
}

fn add_shifted(acc: &mut Vec<i64>, p: &[i64], shift: usize, sign: i64) {
    if acc.len() < p.len() + shift {
        acc.resize(p.len() + shift, 0);
    }
    for (k, c) in p.iter().enumerate() {
        acc[k + shift] += sign * c;
    }
}

/// Plain recursion on the largest right descent of `w`, with the correction
/// summed over every `z < ws` having the same descent. No reduction of the
/// pair, no canonical forms.
pub struct KlOracle {
    pub n: usize,
    pub perms: Vec<Perm>,
    index: HashMap<Perm, usize>,
    len: Vec<usize>,
    le: Vec<bool>,
    memo: Vec<Option<Vec<i64>>>,
    mu_below: Vec<Option<Vec<(usize, i64)>>>,
}

impl KlOracle {
    pub fn new(n: usize) -> Self {
        let perms = all_perms(n);
        let m = perms.len();
        let index = perms.iter().enumerate().map(|(i, p)| (p.clone(), i)).collect();
        let len = perms.iter().map(|p| length(p)).collect();
        let mut le = vec![false; m * m];
        for a in 0..m {
            for b in 0..m {
                le[a * m + b] = bruhat_le(&perms[a], &perms[b]);
            }
        }
        KlOracle {
            n,
            perms,
            index,
            len,
            le,
            memo: vec![None; m * m],
            mu_below: vec![None; m],
        }
    }

    pub fn id(&self, w: &[u8]) -> usize {
        self.index[w]
    }

    pub fn leq(&self, a: usize, b: usize) -> bool {
        self.le[a * self.perms.len() + b]
    }

    fn times_s(&self, a: usize, s: usize) -> usize {
        let mut p = self.perms[a].clone();
        p.swap(s, s + 1);
        self.index[&p]
    }

    fn has_descent(&self, a: usize, s: usize) -> bool {
        self.perms[a][s] > self.perms[a][s + 1]
    }

    pub fn poly(&mut self, x: &[u8], w: &[u8]) -> Vec<i64> {
        let (a, b) = (self.id(x), self.id(w));
        self.p(a, b)
    }

    pub fn mu(&mut self, x: &[u8], w: &[u8]) -> i64 {
        let (a, b) = (self.id(x), self.id(w));
        self.mu_ids(a, b)
    }

    fn mu_ids(&mut self, a: usize, b: usize) -> i64 {
        let (la, lb) = (self.len[a], self.len[b]);
        if lb <= la || (lb - la) % 2 == 0 || !self.leq(a, b) {
            return 0;
        }
        let p = self.p(a, b);
        p.get((lb - la - 1) / 2).copied().unwrap_or(0)
    }

    /// Every `z < v` with `μ(z, v) ≠ 0`.
    fn mu_list(&mut self, v: usize) -> Vec<(usize, i64)> {
        if let Some(l) = &self.mu_below[v] {
            return l.clone();
        }
        let mut out = Vec::new();
        for z in 0..self.perms.len() {
            if z != v && self.leq(z, v) {
                let m = self.mu_ids(z, v);
                if m != 0 {
                    out.push((z, m));
                }
            }
        }
        self.mu_below[v] = Some(out.clone());
        out
    }

    fn p(&mut self, x: usize, w: usize) -> Vec<i64> {
        let m = self.perms.len();
        if let Some(p) = &self.memo[x * m + w] {
            return p.clone();
        }
        let result = if !self.leq(x, w) {
            Vec::new()
        } else if x == w {
            vec![1]
        } else {
            let s = (0..self.n - 1).rev().find(|&s| self.has_descent(w, s)).unwrap();
            let v = self.times_s(w, s);
            let xs = self.times_s(x, s);
            let c = usize::from(self.has_descent(x, s));
            let mut acc = Vec::new();
            let p1 = self.p(xs, v);
            add_shifted(&mut acc, &p1, 1 - c, 1);
            let p2 = self.p(x, v);
            add_shifted(&mut acc, &p2, c, 1);
            let lw = self.len[w];
            for (z, mu) in self.mu_list(v) {
                if !self.has_descent(z, s) || !self.leq(x, z) {
                    continue;
                }
                let pz = self.p(x, z);
                let scaled: Vec<i64> = pz.iter().map(|c| c * mu).collect();
                add_shifted(&mut acc, &scaled, (lw - self.len[z]) / 2, -1);
            }
            trim(acc)
        };
        self.memo[x * m + w] = Some(result.clone());
        result
    }
}

// ---- Robinson-Schensted, bottom row first ----

pub fn rs(w: &[u8]) -> (Tab, Tab) {
    let mut p: Tab = Vec::new();
    let mut q: Tab = Vec::new();
    for (pos, &v) in w.iter().enumerate() {
        let mut carry = v;
        let mut row = 0;
        loop {
            if row == p.len() {
                p.push(vec![carry]);
                q.push(vec![pos as u8]);
                break;
            }
            match p[row].iter().position(|&e| e > carry) {
                Some(i) => {
                    std::mem::swap(&mut p[row][i], &mut carry);
                    row += 1;
                }
                None => {
                    p[row].push(carry);
                    q[row].push(pos as u8);
                    break;
                }
            }
        }
    }
    (p, q)
}

pub fn shape(t: &Tab) -> Vec<usize> {
    t.iter().map(Vec::len).collect()
}

/// Columns left to right, each read from the top down.
pub fn column_word(t: &Tab) -> Perm {
    let width = t.first().map_or(0, Vec::len);
    let mut out = Vec::new();
    for c in 0..width {
        for row in t.iter().rev() {
            if let Some(&v) = row.get(c) {
                out.push(v);
            }
        }
    }
    out
}

pub fn row_word(t: &Tab) -> Perm {
    t.iter().rev().flatten().copied().collect()
}

fn row_of(t: &Tab, v: u8) -> usize {
    t.iter().position(|r| r.contains(&v)).unwrap()
}

/// `i` with `i+1` in a strictly higher row.
pub fn tab_descents(t: &Tab) -> BTreeSet<u8> {
    let n = t.iter().map(Vec::len).sum::<usize>() as u8;
    (0..n.saturating_sub(1))
        .filter(|&i| row_of(t, i + 1) > row_of(t, i))
        .collect()
}

/// The dual Knuth move on values `k, k+1, k+2`, or `None` when they appear
/// in monotone order.
pub fn dual_knuth(k: u8, w: &[u8]) -> Option<Perm> {
    let pos = inverse(w);
    let (a, b, c) = (pos[k as usize], pos[k as usize + 1], pos[k as usize + 2]);
    let between = |m: u8, lo: u8, hi: u8| (lo < m && m < hi) || (hi < m && m < lo);
    let swap = |u: u8, v: u8| -> Perm {
        w.iter()
            .map(|&e| if e == u { v } else if e == v { u } else { e })
            .collect()
    };
    if between(c, a, b) {
        Some(swap(k, k + 1))
    } else if between(a, b, c) {
        Some(swap(k + 1, k + 2))
    } else {
        None
    }
}

// ---- brute-force search pipeline ----

pub struct Universe {
    pub n: usize,
    /// `(P, Q) -> permutation`.
    pub by_pair: HashMap<(Tab, Tab), Perm>,
    /// Standard tableaux grouped by shape.
    pub tableaux: BTreeMap<Vec<usize>, Vec<Tab>>,
}

impl Universe {
    pub fn new(n: usize) -> Self {
        let mut by_pair = HashMap::new();
        let mut tableaux: BTreeMap<Vec<usize>, BTreeSet<Tab>> = BTreeMap::new();
        for w in all_perms(n) {
            let (p, q) = rs(&w);
            tableaux.entry(shape(&p)).or_default().insert(p.clone());
            by_pair.insert((p, q), w);
        }
        let tableaux = tableaux
            .into_iter()
            .map(|(s, set)| (s, set.into_iter().collect()))
            .collect();
        Universe { n, by_pair, tableaux }
    }

    pub fn perm(&self, p: &Tab, q: &Tab) -> &Perm {
        &self.by_pair[&(p.clone(), q.clone())]
    }
}

pub fn is_column_word_of_itself(w: &[u8]) -> Option<Vec<usize>> {
    let (p, _) = rs(w);
    (column_word(&p) == w).then(|| shape(&p))
}

fn flatten_from(w: &[u8], i: u8) -> Perm {
    w.iter().filter(|&&v| v >= i).map(|&v| v - i).collect()
}

pub fn oracle_filter(u: &Universe, f: u8, px: &Tab, pw: &Tab) -> bool {
    let n = u.n;
    let (x, w) = (column_word(px), column_word(pw));
    match f {
        1 => tab_descents(pw).is_subset(&tab_descents(px)),
        2 => u.tableaux[&shape(px)].iter().all(|q| {
            let (a, b) = (u.perm(px, q), u.perm(pw, q));
            a != b && bruhat_le(a, b)
        }),
        3 => row_of(pw, n as u8 - 1) > row_of(px, n as u8 - 1),
        4 => {
            let (rx, rw) = (inverse(&row_word(px)), inverse(&row_word(pw)));
            (0..n.saturating_sub(2)).all(|k| {
                !(rw[k + 2] < rw[k]) || (rx[k + 2] < rx[k + 1] && rx[k + 1] < rx[k])
            })
        }
        5 | 6 => {
            let restricted = f == 6;
            let d = |a: &[u8], b: &[u8]| length(b) as i64 - length(a) as i64;
            let d0 = d(&x, &w);
            let mut seen = HashSet::new();
            let mut queue = VecDeque::from([(x.clone(), w.clone())]);
            seen.insert((x, w));
            while let Some((a, b)) = queue.pop_front() {
                for k in 0..n.saturating_sub(2) as u8 {
                    let (Some(na), Some(nb)) = (dual_knuth(k, &a), dual_knuth(k, &b)) else {
                        continue;
                    };
                    let dn = d(&na, &nb);
                    if dn < d0 {
                        return false;
                    }
                    if restricted && dn != d0 {
                        continue;
                    }
                    if seen.insert((na.clone(), nb.clone())) {
                        queue.push_back((na, nb));
                    }
                }
            }
            true
        }
        7 => (length(&w) as i64 - length(&x) as i64).rem_euclid(2) == 1,
        8 => {
            let (xi, wi) = (inverse(&x), inverse(&w));
            for i in 1..n {
                if (0..i).any(|v| xi[v] != wi[v]) {
                    break;
                }
                let sx = is_column_word_of_itself(&flatten_from(&x, i as u8));
                let sw = is_column_word_of_itself(&flatten_from(&w, i as u8));
                if sx.is_some() && sx == sw {
                    return false;
                }
            }
            true
        }
        _ => unreachable!(),
    }
}

/// Counts after step 1, then after each of 7, 6, 5, 2; plus the step-2
/// survivors.
pub fn oracle_pipeline(u: &Universe) -> (Vec<usize>, Vec<(Tab, Tab)>) {
    let mut pairs: Vec<(Tab, Tab)> = Vec::new();
    for ts in u.tableaux.values() {
        for px in ts {
            for pw in ts {
                if [1, 3, 4, 8].iter().all(|&f| oracle_filter(u, f, px, pw)) {
                    pairs.push((px.clone(), pw.clone()));
                }
            }
        }
    }
    let mut counts = vec![pairs.len()];
    for f in [7, 6, 5, 2] {
        pairs.retain(|(a, b)| oracle_filter(u, f, a, b));
        counts.push(pairs.len());
    }
    (counts, pairs)
}
