//! The correction sets of the defining recursion.
//!
//! For `s` a descent of `w` on the given side and `v = ws` (or `sw`), the sum
//! subtracted in the recursion only needs `z` in `[x, v)` with `zs < z` that
//! are either coatoms of `v` (the δ set) or lie in `Flush(v)` further down
//! (the ω set). Everything else has `μ(z, v) = 0`.

use std::fmt;
use std::str::FromStr;

use crate::bruhat::{coatoms, le, IntervalIter};
use crate::perm::{check_degrees, DescentSet, Permutation};

use super::KlError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Side {
    Left,
    Right,
}

impl Side {
    /// `w·s_i` for the right side, `s_i·w` for the left.
    pub fn apply(self, w: &Permutation, i: usize) -> Permutation {
        match self {
            Side::Right => w.swap_positions(i, i + 1),
            Side::Left => w.swap_values(i, i + 1),
        }
    }

    pub fn has_descent(self, w: &Permutation, i: usize) -> bool {
        match self {
            Side::Right => w.has_right_descent(i),
            Side::Left => w.has_left_descent(i),
        }
    }

    pub fn descents(self, w: &Permutation) -> DescentSet {
        match self {
            Side::Right => w.right_descents(),
            Side::Left => w.left_descents(),
        }
    }
}

impl fmt::Display for Side {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Side::Left => "left",
            Side::Right => "right",
        })
    }
}

impl FromStr for Side {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "left" | "l" => Ok(Side::Left),
            "right" | "r" => Ok(Side::Right),
            _ => Err(format!("unknown side {s:?} (expected left or right)")),
        }
    }
}

/// Indexes one correction sum: `x`, the lowered element `v`, and the
/// generator `s` with `s` not a descent of `v` on `side`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ThetaSpec {
    pub side: Side,
    pub generator: usize,
    pub x: Permutation,
    pub v: Permutation,
}

impl ThetaSpec {
    pub fn new(side: Side, generator: usize, x: Permutation, v: Permutation) -> Self {
        ThetaSpec {
            side,
            generator,
            x,
            v,
        }
    }

    /// The element `w` with `v = ws` (or `sw`).
    pub fn top(&self) -> Permutation {
        self.side.apply(&self.v, self.generator)
    }

    pub(crate) fn validate(&self) -> Result<(), KlError> {
        check_degrees(&self.x, &self.v)?;
        if self.generator + 1 >= self.v.degree()
            || self.side.has_descent(&self.v, self.generator)
        {
            return Err(KlError::InvalidTheta {
                side: self.side,
                generator: self.generator,
                v: self.v.clone(),
            });
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct ThetaSets {
    /// Flush elements `z` of `[x, v)` with `zs < z` and `l(z) < l(v) - 1`.
    pub omega: Vec<Permutation>,
    /// Coatoms `z` of `v` with `x <= z` and `zs < z`.
    pub delta: Vec<Permutation>,
}

impl ThetaSets {
    pub fn iter(&self) -> impl Iterator<Item = &Permutation> {
        self.delta.iter().chain(&self.omega)
    }
}

pub fn theta_sets(spec: &ThetaSpec) -> Result<ThetaSets, KlError> {
    spec.validate()?;
    Ok(theta_sets_unchecked(spec.side, spec.generator, &spec.x, &spec.v))
}

pub(crate) fn theta_sets_unchecked(
    side: Side,
    s: usize,
    x: &Permutation,
    v: &Permutation,
) -> ThetaSets {
    if !le(x, v) {
        return ThetaSets::default();
    }
    let lv = v.length();
    let (mut right, mut left) = (v.right_descents(), v.left_descents());
    match side {
        Side::Right => right.insert(s),
        Side::Left => left.insert(s),
    }
    let omega = IntervalIter::with_descents(x, v, right, left)
        .expect("degrees already checked")
        .filter(|z| z.length() + 1 < lv)
        .collect();
    let mut delta: Vec<Permutation> = coatoms(v)
        .into_iter()
        .filter(|z| side.has_descent(z, s) && le(x, z))
        .collect();
    delta.sort();
    ThetaSets { omega, delta }
}
