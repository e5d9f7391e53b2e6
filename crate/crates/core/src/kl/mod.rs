//! Kazhdan–Lusztig polynomials of the symmetric group.
//!
//! Every query is first canonicalized (see [`canonicalize`]); the engine then
//! applies the defining recursion on one generator, using only the restricted
//! correction set of [`theta_sets`], and memoizes by canonical key.

mod cache;
mod canon;
mod theta;

use std::fmt;
use std::path::Path;
use std::str::FromStr;

use thiserror::Error;

use crate::bruhat::le;
use crate::perm::{check_degrees, PermError, Permutation};
use crate::qpoly::QPoly;
use crate::scalar::Coefficient;

pub use cache::{CacheError, CacheStats, KlCache, CACHE_HEADER};
pub use canon::{canonicalize, Canonical, CanonicalPair, PairKey};
pub use theta::{theta_sets, Side, ThetaSets, ThetaSpec};

use canon::canonicalize_unchecked;
use theta::theta_sets_unchecked;

#[derive(Debug, Error)]
pub enum KlError {
    #[error(transparent)]
    Perm(#[from] PermError),
    #[error("{x} and {w} are not comparable in Bruhat order")]
    Incomparable { x: Permutation, w: Permutation },
    #[error("s{generator} is a {side} descent of {v}, so it cannot index a correction sum")]
    InvalidTheta {
        side: Side,
        generator: usize,
        v: Permutation,
    },
    #[error(transparent)]
    Cache(#[from] CacheError),
}

/// Which generator the recursion peels off a canonical `w`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Hash)]
pub enum Strategy {
    #[default]
    SmallestRight,
    LargestRight,
    SmallestLeft,
    LargestLeft,
}

impl Strategy {
    pub const ALL: [Strategy; 4] = [
        Strategy::SmallestRight,
        Strategy::LargestRight,
        Strategy::SmallestLeft,
        Strategy::LargestLeft,
    ];

    /// `w` must not be the identity.
    fn choose(self, w: &Permutation) -> (Side, usize) {
        let (side, set) = match self {
            Strategy::SmallestRight | Strategy::LargestRight => (Side::Right, w.right_descents()),
            Strategy::SmallestLeft | Strategy::LargestLeft => (Side::Left, w.left_descents()),
        };
        let s = match self {
            Strategy::SmallestRight | Strategy::SmallestLeft => set.first(),
            Strategy::LargestRight | Strategy::LargestLeft => set.last(),
        };
        (side, s.expect("non-identity element has a descent"))
    }
}

impl fmt::Display for Strategy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Strategy::SmallestRight => "smallest-right",
            Strategy::LargestRight => "largest-right",
            Strategy::SmallestLeft => "smallest-left",
            Strategy::LargestLeft => "largest-left",
        })
    }
}

impl FromStr for Strategy {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Strategy::ALL
            .into_iter()
            .find(|st| st.to_string() == s)
            .ok_or_else(|| {
                format!(
                    "unknown strategy {s:?} (expected smallest-right, largest-right, smallest-left or largest-left)"
                )
            })
    }
}

/// Memoizing evaluator for `P_{x,w}` and `μ(x, w)`.
///
/// Shareable across threads: concurrent queries may duplicate work on the
/// same key but always agree on its value.
pub struct KlEngine<C> {
    cache: KlCache<C>,
    strategy: Strategy,
}

impl<C: Coefficient> Default for KlEngine<C> {
    fn default() -> Self {
        Self::new(Strategy::default())
    }
}

impl<C: Coefficient> KlEngine<C> {
    pub fn new(strategy: Strategy) -> Self {
        Self::with_cache(KlCache::new(), strategy)
    }

    pub fn with_cache(cache: KlCache<C>, strategy: Strategy) -> Self {
        KlEngine { cache, strategy }
    }

    /// Starts from the cache file at `path` if it exists, else empty.
    pub fn open(path: impl AsRef<Path>, strategy: Strategy) -> Result<Self, KlError> {
        let path = path.as_ref();
        let cache = if path.exists() {
            KlCache::load(path)?
        } else {
            KlCache::new()
        };
        Ok(Self::with_cache(cache, strategy))
    }

    pub fn save(&self, path: impl AsRef<Path>) -> Result<(), KlError> {
        Ok(self.cache.save(path)?)
    }

    pub fn cache(&self) -> &KlCache<C> {
        &self.cache
    }

    pub fn into_cache(self) -> KlCache<C> {
        self.cache
    }

    pub fn strategy(&self) -> Strategy {
        self.strategy
    }

    pub fn kl_poly(&self, x: &Permutation, w: &Permutation) -> Result<QPoly<C>, KlError> {
        check_degrees(x, w)?;
        Ok(self.poly(x, w))
    }

    /// Coefficient of `q^((l(w)-l(x)-1)/2)` in `P_{x,w}`; zero unless `x < w`
    /// with odd length difference.
    pub fn mu(&self, x: &Permutation, w: &Permutation) -> Result<C, KlError> {
        check_degrees(x, w)?;
        Ok(self.mu_unchecked(x, w))
    }

    /// `μ` of the pair ordered by Bruhat order.
    pub fn mu_sym(&self, x: &Permutation, w: &Permutation) -> Result<C, KlError> {
        check_degrees(x, w)?;
        if le(x, w) {
            Ok(self.mu_unchecked(x, w))
        } else if le(w, x) {
            Ok(self.mu_unchecked(w, x))
        } else {
            Err(KlError::Incomparable {
                x: x.clone(),
                w: w.clone(),
            })
        }
    }

    /// The correction sum `Σ μ(z, v) q^((l(v)+1-l(z))/2) P_{x,z}` over the
    /// restricted set.
    pub fn theta_sum(&self, spec: &ThetaSpec) -> Result<QPoly<C>, KlError> {
        spec.validate()?;
        Ok(self.theta(spec.side, spec.generator, &spec.x, &spec.v))
    }

    pub(crate) fn mu_unchecked(&self, x: &Permutation, w: &Permutation) -> C {
        let (lx, lw) = (x.length(), w.length());
        if lw <= lx || (lw - lx) % 2 == 0 || !le(x, w) {
            return C::zero();
        }
        if lw - lx == 1 {
            return C::one();
        }
        self.poly(x, w).coeff((lw - lx - 1) / 2)
    }

    fn poly(&self, x: &Permutation, w: &Permutation) -> QPoly<C> {
        match canonicalize_unchecked(x, w) {
            Canonical::Zero => QPoly::zero(),
            Canonical::One => QPoly::one(),
            Canonical::Pair(pair) => self.canonical_poly(pair),
        }
    }

    fn canonical_poly(&self, pair: CanonicalPair) -> QPoly<C> {
        if pair.w.length() - pair.x.length() <= 2 {
            return QPoly::one();
        }
        if let Some(p) = self.cache.get(&pair.key) {
            return p;
        }
        let value = self.expand(&pair.x, &pair.w);
        self.cache.insert(pair.key, value.clone());
        value
    }

    /// One step of the recursion. Canonical pairs have every descent of `w`
    /// also a descent of `x`, so `xs < x` and the leading terms are
    /// `q P_{x,v} + P_{xs,v}`.
    fn expand(&self, x: &Permutation, w: &Permutation) -> QPoly<C> {
        let (side, s) = self.strategy.choose(w);
        let v = side.apply(w, s);
        let xs = side.apply(x, s);
        let lead = if side.has_descent(x, s) {
            &self.poly(x, &v).shift(1) + &self.poly(&xs, &v)
        } else {
            &self.poly(x, &v) + &self.poly(&xs, &v).shift(1)
        };
        &lead - &self.theta(side, s, x, &v)
    }

    fn theta(&self, side: Side, s: usize, x: &Permutation, v: &Permutation) -> QPoly<C> {
        let lv = v.length();
        let mut sum = QPoly::zero();
        for z in theta_sets_unchecked(side, s, x, v).iter() {
            let gap = lv - z.length();
            if gap.is_multiple_of(2) {
                continue;
            }
            let m = if gap == 1 {
                C::one()
            } else {
                self.mu_unchecked(z, v)
            };
            if m.is_zero() {
                continue;
            }
            let term = self.poly(x, z).scale(&m).shift(gap.div_ceil(2));
            sum = &sum + &term;
        }
        sum
    }
}
