//! Elementary Knuth transformations on values.
//!
//! `L_k` applies to `w` when `k`, `k+1`, `k+2` occur in `w` neither in
//! increasing nor in decreasing order, i.e. exactly one of `s_k`, `s_{k+1}`
//! is a left descent. [`knuth_apply`] is the operator that keeps the
//! recording tableau (and the symmetric μ) invariant: it multiplies on the
//! left by whichever of `s_k`, `s_{k+1}` stays inside the domain.
//! [`knuth_interchange`] is the bare transposition of the values `k` and
//! `k+2`, which in general leaves the left cell.

use crate::perm::Permutation;

use super::RskError;

pub fn knuth_applicable(k: usize, w: &Permutation) -> bool {
    k + 2 < w.degree() && (w.has_left_descent(k) != w.has_left_descent(k + 1))
}

fn check(k: usize, w: &Permutation) -> Result<(), RskError> {
    if knuth_applicable(k, w) {
        Ok(())
    } else {
        Err(RskError::NotApplicable { k, w: w.clone() })
    }
}

/// Cell-preserving `L_k`. If `k+2` lies between `k` and `k+1` in the word,
/// swaps `k` and `k+1`; if `k` lies between the other two, swaps `k+1` and
/// `k+2`.
pub fn knuth_apply(k: usize, w: &Permutation) -> Result<Permutation, RskError> {
    check(k, w)?;
    Ok(star(k, w))
}

pub(crate) fn star(k: usize, w: &Permutation) -> Permutation {
    let swapped = w.swap_values(k, k + 1);
    if knuth_applicable(k, &swapped) {
        swapped
    } else {
        w.swap_values(k + 1, k + 2)
    }
}

/// The same operator acting on positions: `(L_k w⁻¹)⁻¹`. Preserves the
/// insertion tableau.
pub fn knuth_apply_right(k: usize, w: &Permutation) -> Result<Permutation, RskError> {
    Ok(knuth_apply(k, &w.inverse())?.inverse())
}

/// Literal interchange of the values `k` and `k+2` on the same domain.
pub fn knuth_interchange(k: usize, w: &Permutation) -> Result<Permutation, RskError> {
    check(k, w)?;
    Ok(w.swap_values(k, k + 2))
}
