//! Shapes and standard Young tableaux in French orientation: row 0 is the
//! bottom row, entries increase rightwards along rows and upwards along
//! columns.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use num_traits::One;

use crate::perm::{digit_char, DescentSet, Permutation};

use super::RskError;

/// A partition `λ_0 >= λ_1 >= ... >= 1`, listed bottom row first.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Shape(Vec<usize>);

impl Shape {
    pub fn new(parts: Vec<usize>) -> Result<Self, RskError> {
        if parts.contains(&0) || parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(RskError::BadShape { parts });
        }
        Ok(Shape(parts))
    }

    pub fn parts(&self) -> &[usize] {
        &self.0
    }

    pub fn size(&self) -> usize {
        self.0.iter().sum()
    }

    pub fn height(&self) -> usize {
        self.0.len()
    }

    pub fn conjugate(&self) -> Shape {
        let width = self.0.first().copied().unwrap_or(0);
        Shape((0..width).map(|c| self.0.iter().filter(|&&p| p > c).count()).collect())
    }

    /// Number of standard tableaux of this shape, by the hook-length formula.
    pub fn count_tableaux(&self) -> BigUint {
        let conj = self.conjugate();
        let mut hooks = BigUint::one();
        for (r, &len) in self.0.iter().enumerate() {
            for c in 0..len {
                let hook = (len - c - 1) + (conj.0[c] - r - 1) + 1;
                hooks *= hook as u64;
            }
        }
        factorial(self.size()) / hooks
    }
}

impl fmt::Display for Shape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(ToString::to_string).collect();
        write!(f, "({})", parts.join(","))
    }
}

impl fmt::Debug for Shape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Shape{self}")
    }
}

impl FromStr for Shape {
    type Err = RskError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let inner = s.trim().trim_start_matches('(').trim_end_matches(')');
        let parts = inner
            .split(',')
            .filter(|t| !t.trim().is_empty())
            .map(|t| t.trim().parse::<usize>())
            .collect::<Result<Vec<_>, _>>()
            .map_err(|_| RskError::Parse {
                text: s.to_string(),
            })?;
        Shape::new(parts)
    }
}

pub fn factorial(n: usize) -> BigUint {
    (1..=n as u64).fold(BigUint::one(), |acc, k| acc * k)
}

/// All partitions of `n`, in reverse lexicographic order starting from `(n)`.
pub fn partitions(n: usize) -> Vec<Shape> {
    fn go(remaining: usize, max: usize, prefix: &mut Vec<usize>, out: &mut Vec<Shape>) {
        if remaining == 0 {
            out.push(Shape(prefix.clone()));
            return;
        }
        for part in (1..=remaining.min(max)).rev() {
            prefix.push(part);
            go(remaining - part, part, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    go(n, n, &mut Vec::new(), &mut out);
    out
}

/// Total number of standard tableaux with `n` boxes.
pub fn count_standard_tableaux(n: usize) -> BigUint {
    partitions(n).iter().map(Shape::count_tableaux).sum()
}

/// A standard Young tableau; `rows[0]` is the bottom row.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Tableau {
    rows: Vec<Vec<u8>>,
}

impl Tableau {
    /// Validates that `rows` is standard with entries exactly `0..n`.
    pub fn from_rows(rows: Vec<Vec<usize>>) -> Result<Self, RskError> {
        let n: usize = rows.iter().map(Vec::len).sum();
        let reject = |reason: &str| RskError::NotStandard {
            reason: format!("{reason} in {rows:?}"),
        };
        if n > crate::perm::MAX_DEGREE {
            return Err(reject("too many boxes"));
        }
        let mut seen = vec![false; n];
        for &v in rows.iter().flatten() {
            if v >= n || std::mem::replace(&mut seen[v], true) {
                return Err(reject("entries are not 0..n-1"));
            }
        }
        if rows.iter().any(Vec::is_empty) || rows.windows(2).any(|p| p[0].len() < p[1].len()) {
            return Err(reject("row lengths do not form a partition"));
        }
        if rows.iter().any(|r| r.windows(2).any(|p| p[0] >= p[1])) {
            return Err(reject("a row is not increasing"));
        }
        for pair in rows.windows(2) {
            if pair[1].iter().zip(&pair[0]).any(|(above, below)| above <= below) {
                return Err(reject("a column is not increasing"));
            }
        }
        Ok(Tableau {
            rows: rows
                .into_iter()
                .map(|r| r.into_iter().map(|v| v as u8).collect())
                .collect(),
        })
    }

    pub(crate) fn from_raw(rows: Vec<Vec<u8>>) -> Self {
        Tableau { rows }
    }

    pub fn rows(&self) -> &[Vec<u8>] {
        &self.rows
    }

    pub fn shape(&self) -> Shape {
        Shape(self.rows.iter().map(Vec::len).collect())
    }

    pub fn size(&self) -> usize {
        self.rows.iter().map(Vec::len).sum()
    }

    /// `(row, column)` of entry `v`, row counted from the bottom.
    pub fn position_of(&self, v: usize) -> Option<(usize, usize)> {
        self.rows.iter().enumerate().find_map(|(r, row)| {
            row.iter().position(|&e| e as usize == v).map(|c| (r, c))
        })
    }

    /// Row index of every entry.
    pub fn heights(&self) -> Vec<usize> {
        let mut out = vec![0; self.size()];
        for (r, row) in self.rows.iter().enumerate() {
            for &v in row {
                out[v as usize] = r;
            }
        }
        out
    }

    pub fn height_of(&self, v: usize) -> Option<usize> {
        self.position_of(v).map(|(r, _)| r)
    }

    /// Rows read left to right, starting with the top row.
    pub fn row_word(&self) -> Permutation {
        let images = self.rows.iter().rev().flatten().copied().collect();
        Permutation::from_raw(images)
    }

    /// Columns read top to bottom, starting with the leftmost column.
    pub fn column_word(&self) -> Permutation {
        let width = self.rows.first().map_or(0, Vec::len);
        let mut images = Vec::with_capacity(self.size());
        for c in 0..width {
            for row in self.rows.iter().rev() {
                if let Some(&v) = row.get(c) {
                    images.push(v);
                }
            }
        }
        Permutation::from_raw(images)
    }

    /// `i` such that `i + 1` sits strictly north and weakly west of `i`.
    pub fn descents(&self) -> DescentSet {
        let heights = self.heights();
        (0..heights.len().saturating_sub(1))
            .filter(|&i| heights[i + 1] > heights[i])
            .collect()
    }

    /// The row index assigned to each entry `0, 1, ...`; enumeration order
    /// of [`standard_tableaux`] is lexicographic in this sequence.
    pub fn filling_sequence(&self) -> Vec<usize> {
        self.heights()
    }

    pub fn transpose(&self) -> Tableau {
        let conj = self.shape().conjugate();
        let rows = (0..conj.height())
            .map(|c| self.rows.iter().take(conj.0[c]).map(|r| r[c]).collect())
            .collect();
        Tableau { rows }
    }
}

/// Digit rows separated by `/`, or comma-separated decimal rows once an entry
/// needs more than one character.
impl fmt::Display for Tableau {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let wide = self.size() > 36;
        for (r, row) in self.rows.iter().enumerate() {
            if r > 0 {
                f.write_str("/")?;
            }
            if wide {
                let cells: Vec<String> = row.iter().map(ToString::to_string).collect();
                f.write_str(&cells.join(","))?;
            } else {
                for &v in row {
                    write!(f, "{}", digit_char(v as usize).expect("entry below 36"))?;
                }
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Tableau {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Tableau({self})")
    }
}

impl FromStr for Tableau {
    type Err = RskError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || RskError::Parse {
            text: s.to_string(),
        };
        let s = s.trim();
        if s.is_empty() {
            return Ok(Tableau { rows: Vec::new() });
        }
        let rows = s
            .split('/')
            .map(|row| {
                if row.contains(',') {
                    row.split(',')
                        .map(|t| t.trim().parse::<usize>().map_err(|_| bad()))
                        .collect::<Result<Vec<_>, _>>()
                } else {
                    row.chars()
                        .map(|c| c.to_digit(36).map(|d| d as usize).ok_or_else(bad))
                        .collect()
                }
            })
            .collect::<Result<Vec<_>, _>>()?;
        Tableau::from_rows(rows)
    }
}

/// Every standard tableau of `shape`, lexicographic in the filling sequence.
pub fn standard_tableaux(shape: &Shape) -> Vec<Tableau> {
    fn go(
        next: usize,
        n: usize,
        parts: &[usize],
        rows: &mut Vec<Vec<u8>>,
        out: &mut Vec<Tableau>,
    ) {
        if next == n {
            out.push(Tableau { rows: rows.clone() });
            return;
        }
        for r in 0..parts.len() {
            let len = rows[r].len();
            let fits = len < parts[r] && (r == 0 || rows[r - 1].len() > len);
            if fits {
                rows[r].push(next as u8);
                go(next + 1, n, parts, rows, out);
                rows[r].pop();
            }
        }
    }
    let mut out = Vec::new();
    let mut rows = vec![Vec::new(); shape.height()];
    go(0, shape.size(), shape.parts(), &mut rows, &mut out);
    out
}
