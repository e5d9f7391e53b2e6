//! Reduction of a pair `(x, w)` to a canonical representative with the same
//! Kazhdan–Lusztig polynomial.

use std::fmt;

use crate::bruhat::{le, reduce_unchecked};
use crate::perm::{check_degrees, PermError, Permutation};

/// Map key for a canonical pair: the images of `x` followed by those of `w`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PairKey(Box<[u8]>);

impl PairKey {
    pub fn new(x: &Permutation, w: &Permutation) -> Self {
        let mut bytes = Vec::with_capacity(2 * x.degree());
        bytes.extend_from_slice(x.images());
        bytes.extend_from_slice(w.images());
        PairKey(bytes.into_boxed_slice())
    }

    pub fn as_bytes(&self) -> &[u8] {
        &self.0
    }

    pub fn split(&self) -> (Permutation, Permutation) {
        let half = self.0.len() / 2;
        (
            Permutation::from_raw(self.0[..half].to_vec()),
            Permutation::from_raw(self.0[half..].to_vec()),
        )
    }
}

/// `x w`, each in canonical permutation text.
impl fmt::Display for PairKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (x, w) = self.split();
        write!(f, "{x} {w}")
    }
}

impl fmt::Debug for PairKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PairKey({self})")
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CanonicalPair {
    pub x: Permutation,
    pub w: Permutation,
    pub key: PairKey,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Canonical {
    /// `x` is not below `w`.
    Zero,
    /// The pair collapsed to `x = w`.
    One,
    Pair(CanonicalPair),
}

/// Pushes `x` up through the descents of `w` until `D_R(x) ⊇ D_R(w)` and
/// `D_L(x) ⊇ D_L(w)`. Returns whether anything moved.
fn absorb_descents(x: &mut Permutation, w: &Permutation) -> bool {
    let mut moved = false;
    loop {
        let need_right = w.right_descents().bits() & !x.right_descents().bits();
        let need_left = w.left_descents().bits() & !x.left_descents().bits();
        if need_right == 0 && need_left == 0 {
            return moved;
        }
        if need_right != 0 {
            let s = need_right.trailing_zeros() as usize;
            *x = x.swap_positions(s, s + 1);
        } else {
            let s = need_left.trailing_zeros() as usize;
            *x = x.swap_values(s, s + 1);
        }
        moved = true;
    }
}

/// Applies, to a fixpoint: descent absorption, reduction on `Δ(x, w)`; then
/// keeps the smaller of `(x, w)` and `(x⁻¹, w⁻¹)` by key.
pub fn canonicalize(x: &Permutation, w: &Permutation) -> Result<Canonical, PermError> {
    check_degrees(x, w)?;
    Ok(canonicalize_unchecked(x, w))
}

pub(crate) fn canonicalize_unchecked(x: &Permutation, w: &Permutation) -> Canonical {
    if !le(x, w) {
        return Canonical::Zero;
    }
    let (mut x, mut w) = (x.clone(), w.clone());
    loop {
        if x == w {
            return Canonical::One;
        }
        let moved = absorb_descents(&mut x, &w);
        let reduced = reduce_unchecked(&x, &w);
        let shrunk = reduced.x_tilde.degree() < x.degree();
        x = reduced.x_tilde;
        w = reduced.w_tilde;
        if !moved && !shrunk {
            break;
        }
    }
    let direct = PairKey::new(&x, &w);
    let (xi, wi) = (x.inverse(), w.inverse());
    let inverted = PairKey::new(&xi, &wi);
    if inverted < direct {
        CanonicalPair {
            x: xi,
            w: wi,
            key: inverted,
        }
    } else {
        CanonicalPair { x, w, key: direct }
    }
    .into()
}

impl From<CanonicalPair> for Canonical {
    fn from(pair: CanonicalPair) -> Self {
        Canonical::Pair(pair)
    }
}
