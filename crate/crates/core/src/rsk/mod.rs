//! The Robinson–Schensted correspondence, tableau words, Knuth operators and
//! left cells.
//!
//! `rsk(w)` row-inserts `w(0), w(1), ...` into the bottom row; `P` holds the
//! values and `Q` records the order in which boxes appeared. A left cell is
//! the set of permutations sharing one `Q`.

mod knuth;
mod tableau;

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::perm::Permutation;

pub use knuth::{knuth_applicable, knuth_apply, knuth_apply_right, knuth_interchange};
pub(crate) use knuth::star;
pub use tableau::{
    count_standard_tableaux, factorial, partitions, standard_tableaux, Shape, Tableau,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RskError {
    #[error("parts {parts:?} do not form a partition")]
    BadShape { parts: Vec<usize> },
    #[error("not a standard tableau: {reason}")]
    NotStandard { reason: String },
    #[error("cannot parse {text:?}")]
    Parse { text: String },
    #[error("tableaux {p} and {q} have different shapes")]
    ShapeMismatch { p: Tableau, q: Tableau },
    #[error("L{k} does not apply to {w}: {k}, {}, {} appear in monotone order", k + 1, k + 2)]
    NotApplicable { k: usize, w: Permutation },
}

/// Which reading word identifies a tableau with a permutation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Hash)]
pub enum WordKind {
    #[default]
    Column,
    Row,
}

impl WordKind {
    pub fn read(self, t: &Tableau) -> Permutation {
        match self {
            WordKind::Column => t.column_word(),
            WordKind::Row => t.row_word(),
        }
    }
}

impl fmt::Display for WordKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            WordKind::Column => "column",
            WordKind::Row => "row",
        })
    }
}

impl FromStr for WordKind {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "column" | "col" => Ok(WordKind::Column),
            "row" => Ok(WordKind::Row),
            _ => Err(format!("unknown word kind {s:?} (expected column or row)")),
        }
    }
}

/// Insertion tableau `P` and recording tableau `Q` of `w`.
pub fn rsk(w: &Permutation) -> (Tableau, Tableau) {
    let mut p: Vec<Vec<u8>> = Vec::new();
    let mut q: Vec<Vec<u8>> = Vec::new();
    for (i, &value) in w.images().iter().enumerate() {
        let mut carry = value;
        let mut r = 0;
        loop {
            if r == p.len() {
                p.push(vec![carry]);
                q.push(vec![i as u8]);
                break;
            }
            let row = &mut p[r];
            match row.iter().position(|&e| e > carry) {
                Some(c) => {
                    carry = std::mem::replace(&mut row[c], carry);
                    r += 1;
                }
                None => {
                    row.push(carry);
                    q[r].push(i as u8);
                    break;
                }
            }
        }
    }
    (Tableau::from_raw(p), Tableau::from_raw(q))
}

pub fn insertion_tableau(w: &Permutation) -> Tableau {
    rsk(w).0
}

pub fn recording_tableau(w: &Permutation) -> Tableau {
    rsk(w).1
}

/// The permutation with insertion tableau `p` and recording tableau `q`.
pub fn inverse_rsk(p: &Tableau, q: &Tableau) -> Result<Permutation, RskError> {
    if p.shape() != q.shape() {
        return Err(RskError::ShapeMismatch {
            p: p.clone(),
            q: q.clone(),
        });
    }
    Ok(inverse_rsk_unchecked(p, q))
}

pub(crate) fn inverse_rsk_unchecked(p: &Tableau, q: &Tableau) -> Permutation {
    let n = p.size();
    let mut rows: Vec<Vec<u8>> = p.rows().to_vec();
    let heights = q.heights();
    let mut images = vec![0u8; n];
    for m in (0..n).rev() {
        let r = heights[m];
        let mut carry = rows[r].pop().expect("recording entry sits at a corner");
        if rows[r].is_empty() {
            rows.pop();
        }
        for row in rows[..r].iter_mut().rev() {
            let c = row.iter().rposition(|&e| e < carry).expect("row has a smaller entry");
            carry = std::mem::replace(&mut row[c], carry);
        }
        images[m] = carry;
    }
    Permutation::from_raw(images)
}

/// The tableau whose reading word is `w`, if there is one.
pub fn is_tableau_word(w: &Permutation, kind: WordKind) -> Option<Tableau> {
    let p = insertion_tableau(w);
    (kind.read(&p) == *w).then_some(p)
}

/// All permutations with recording tableau `q`, sorted.
pub fn left_cell(q: &Tableau) -> Vec<Permutation> {
    let mut cell: Vec<Permutation> = standard_tableaux(&q.shape())
        .iter()
        .map(|p| inverse_rsk_unchecked(p, q))
        .collect();
    cell.sort();
    cell
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> Permutation {
        s.parse().unwrap()
    }

    #[test]
    fn worked_example() {
        let (pt, qt) = rsk(&p("4265013"));
        assert_eq!(pt.to_string(), "013/25/46");
        assert_eq!(qt.to_string(), "026/13/45");
        assert_eq!(inverse_rsk(&pt, &qt).unwrap(), p("4265013"));
        assert_eq!(is_tableau_word(&p("4206513"), WordKind::Column), Some(pt.clone()));
        assert_eq!(is_tableau_word(&p("4625013"), WordKind::Row), Some(pt));
        assert_eq!(is_tableau_word(&p("4265013"), WordKind::Column), None);
    }

    #[test]
    fn monotone_words() {
        let (pt, qt) = rsk(&p("0123"));
        assert_eq!((pt.to_string(), qt.to_string()), ("0123".into(), "0123".into()));
        let (pt, qt) = rsk(&p("3210"));
        assert_eq!((pt.to_string(), qt.to_string()), ("0/1/2/3".into(), "0/1/2/3".into()));
        assert_eq!(is_tableau_word(&p("0123"), WordKind::Column).unwrap().to_string(), "0123");
    }

    #[test]
    fn bijection_on_s6() {
        let mut seen = std::collections::HashSet::new();
        for w in Permutation::all(6) {
            let (pt, qt) = rsk(&w);
            assert_eq!(pt.shape(), qt.shape());
            assert_eq!(inverse_rsk(&pt, &qt).unwrap(), w);
            assert_eq!(rsk(&w.inverse()), (qt.clone(), pt.clone()));
            assert!(seen.insert((pt, qt)));
        }
        assert_eq!(seen.len(), 720);
    }

    #[test]
    fn shape_mismatch_is_rejected() {
        let a: Tableau = "012".parse().unwrap();
        let b: Tableau = "01/2".parse().unwrap();
        assert!(matches!(inverse_rsk(&a, &b), Err(RskError::ShapeMismatch { .. })));
    }

    #[test]
    fn tableau_words_match_a_scan() {
        for n in 1..=6 {
            for kind in [WordKind::Column, WordKind::Row] {
                let words: std::collections::HashSet<Permutation> = partitions(n)
                    .iter()
                    .flat_map(standard_tableaux)
                    .map(|t| kind.read(&t))
                    .collect();
                for w in Permutation::all(n) {
                    assert_eq!(is_tableau_word(&w, kind).is_some(), words.contains(&w));
                }
            }
        }
    }

    #[test]
    fn cells_partition_the_group() {
        for n in 1..=5 {
            let mut total = 0;
            for shape in partitions(n) {
                let f = standard_tableaux(&shape).len();
                for q in standard_tableaux(&shape) {
                    let cell = left_cell(&q);
                    assert_eq!(cell.len(), f);
                    assert!(cell.iter().all(|w| recording_tableau(w) == q));
                    total += f;
                }
            }
            assert_eq!(total, (1..=n).product::<usize>());
        }
        let single: Tableau = "0".parse().unwrap();
        assert_eq!(left_cell(&single), vec![Permutation::identity(1)]);
    }
}
