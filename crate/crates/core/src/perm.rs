//! Permutations of `{0, .., n-1}` in one-line notation.

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

/// Largest supported degree. Descent sets are stored as 128-bit masks.
pub const MAX_DEGREE: usize = 128;

const DIGITS: &[u8; 36] = b"0123456789abcdefghijklmnopqrstuvwxyz";

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PermError {
    #[error("unrecognized character {found:?} at position {position}")]
    BadCharacter { position: usize, found: char },
    #[error("malformed entry {found:?} at position {position}")]
    BadEntry { position: usize, found: String },
    #[error("value {value} at position {position} appears twice")]
    Duplicate { position: usize, value: usize },
    #[error("value {value} at position {position} is out of range for degree {degree}")]
    OutOfRange {
        position: usize,
        value: usize,
        degree: usize,
    },
    #[error("degree {0} exceeds the supported maximum of {MAX_DEGREE}")]
    TooLarge(usize),
    #[error("degree mismatch: {left} vs {right}")]
    DegreeMismatch { left: usize, right: usize },
    #[error("generator s_{index} does not exist in degree {degree}")]
    GeneratorOutOfRange { index: usize, degree: usize },
}

/// Renders a value in the extended digit alphabet `0-9a-z`.
pub fn digit_char(value: usize) -> Option<char> {
    DIGITS.get(value).map(|&b| b as char)
}

fn digit_value(c: char) -> Option<usize> {
    match c {
        '0'..='9' => Some(c as usize - '0' as usize),
        'a'..='z' => Some(c as usize - 'a' as usize + 10),
        _ => None,
    }
}

/// A permutation `w`, stored as the word `[w(0), .., w(n-1)]`.
///
/// Ordering is lexicographic on the word, which agrees with the ordering of
/// the canonical text form for permutations of equal degree.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    images: Vec<u8>,
}

impl Permutation {
    pub fn identity(n: usize) -> Self {
        assert!(n <= MAX_DEGREE, "degree {n} exceeds {MAX_DEGREE}");
        Permutation {
            images: (0..n as u8).collect(),
        }
    }

    /// The longest element `[n-1, .., 1, 0]`.
    pub fn longest(n: usize) -> Self {
        assert!(n <= MAX_DEGREE, "degree {n} exceeds {MAX_DEGREE}");
        Permutation {
            images: (0..n as u8).rev().collect(),
        }
    }

    pub fn from_images<I>(images: I) -> Result<Self, PermError>
    where
        I: IntoIterator<Item = usize>,
    {
        let images: Vec<usize> = images.into_iter().collect();
        let n = images.len();
        if n > MAX_DEGREE {
            return Err(PermError::TooLarge(n));
        }
        let mut seen = vec![false; n];
        for (position, &value) in images.iter().enumerate() {
            if value >= n {
                return Err(PermError::OutOfRange {
                    position,
                    value,
                    degree: n,
                });
            }
            if std::mem::replace(&mut seen[value], true) {
                return Err(PermError::Duplicate { position, value });
            }
        }
        Ok(Permutation {
            images: images.into_iter().map(|v| v as u8).collect(),
        })
    }

    /// Caller guarantees `images` is a bijection on `0..len`.
    pub(crate) fn from_raw(images: Vec<u8>) -> Self {
        debug_assert!(Self::from_images(images.iter().map(|&v| v as usize)).is_ok());
        Permutation { images }
    }

    /// Parses either a digit string over `0-9a-z` or a bracketed list of
    /// decimal values such as `[0, 1, 2]`.
    pub fn parse(text: &str) -> Result<Self, PermError> {
        let text = text.trim();
        if let Some(inner) = text.strip_prefix('[') {
            let Some(inner) = inner.strip_suffix(']') else {
                return Err(PermError::BadCharacter {
                    position: text.len(),
                    found: text.chars().last().unwrap_or('['),
                });
            };
            if inner.trim().is_empty() {
                return Ok(Permutation { images: Vec::new() });
            }
            let values = inner
                .split(',')
                .enumerate()
                .map(|(position, entry)| {
                    entry.trim().parse::<usize>().map_err(|_| PermError::BadEntry {
                        position,
                        found: entry.trim().to_string(),
                    })
                })
                .collect::<Result<Vec<_>, _>>()?;
            return Self::from_images(values);
        }
        let values = text
            .chars()
            .enumerate()
            .map(|(position, c)| {
                digit_value(c).ok_or(PermError::BadCharacter { position, found: c })
            })
            .collect::<Result<Vec<_>, _>>()?;
        Self::from_images(values)
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    pub fn images(&self) -> &[u8] {
        &self.images
    }

    /// `w(i)`.
    #[inline]
    pub fn at(&self, i: usize) -> usize {
        self.images[i] as usize
    }

    /// The length `l(w)`, i.e. the number of inversions.
    pub fn length(&self) -> usize {
        let w = &self.images;
        let mut count = 0;
        for i in 0..w.len() {
            for j in i + 1..w.len() {
                if w[i] > w[j] {
                    count += 1;
                }
            }
        }
        count
    }

    pub fn inverse(&self) -> Self {
        let mut inv = vec![0u8; self.degree()];
        for (i, &v) in self.images.iter().enumerate() {
            inv[v as usize] = i as u8;
        }
        Permutation { images: inv }
    }

    /// `(self ∘ other)(i) = self(other(i))`.
    pub fn compose(&self, other: &Permutation) -> Result<Self, PermError> {
        check_degrees(self, other)?;
        Ok(Permutation {
            images: other.images.iter().map(|&i| self.images[i as usize]).collect(),
        })
    }

    fn check_generator(&self, i: usize) -> Result<(), PermError> {
        if i + 1 >= self.degree() {
            return Err(PermError::GeneratorOutOfRange {
                index: i,
                degree: self.degree(),
            });
        }
        Ok(())
    }

    /// `w·s_i`: swaps positions `i` and `i+1`.
    pub fn right_mult_s(&self, i: usize) -> Result<Self, PermError> {
        self.check_generator(i)?;
        Ok(self.swap_positions(i, i + 1))
    }

    /// `s_i·w`: swaps values `i` and `i+1`.
    pub fn left_mult_s(&self, i: usize) -> Result<Self, PermError> {
        self.check_generator(i)?;
        Ok(self.swap_values(i, i + 1))
    }

    pub fn swap_positions(&self, i: usize, j: usize) -> Self {
        let mut images = self.images.clone();
        images.swap(i, j);
        Permutation { images }
    }

    pub fn swap_values(&self, a: usize, b: usize) -> Self {
        let images = self
            .images
            .iter()
            .map(|&v| match v as usize {
                v if v == a => b as u8,
                v if v == b => a as u8,
                _ => v,
            })
            .collect();
        Permutation { images }
    }

    /// `s_i ∈ D_R(w)` iff `w(i) > w(i+1)`.
    #[inline]
    pub fn has_right_descent(&self, i: usize) -> bool {
        i + 1 < self.degree() && self.images[i] > self.images[i + 1]
    }

    /// `s_i ∈ D_L(w)` iff `i+1` appears to the left of `i` in the word.
    pub fn has_left_descent(&self, i: usize) -> bool {
        if i + 1 >= self.degree() {
            return false;
        }
        for &v in &self.images {
            if v as usize == i + 1 {
                return true;
            }
            if v as usize == i {
                return false;
            }
        }
        unreachable!()
    }

    pub fn right_descents(&self) -> DescentSet {
        let mut set = DescentSet::empty();
        for i in 0..self.degree().saturating_sub(1) {
            if self.images[i] > self.images[i + 1] {
                set.insert(i);
            }
        }
        set
    }

    pub fn left_descents(&self) -> DescentSet {
        let mut positions = vec![0usize; self.degree()];
        for (i, &v) in self.images.iter().enumerate() {
            positions[v as usize] = i;
        }
        let mut set = DescentSet::empty();
        for k in 0..self.degree().saturating_sub(1) {
            if positions[k + 1] < positions[k] {
                set.insert(k);
            }
        }
        set
    }

    /// Restriction of the word to `positions`, flattened to a permutation.
    pub fn restrict(&self, positions: &[usize]) -> Self {
        let values: Vec<usize> = positions.iter().map(|&p| self.at(p)).collect();
        flatten(&values).expect("subword of a permutation has distinct values")
    }

    /// All of `S_n` in lexicographic order.
    pub fn all(n: usize) -> AllPermutations {
        AllPermutations {
            next: Some(Permutation::identity(n)),
        }
    }
}

pub(crate) fn check_degrees(a: &Permutation, b: &Permutation) -> Result<(), PermError> {
    if a.degree() != b.degree() {
        return Err(PermError::DegreeMismatch {
            left: a.degree(),
            right: b.degree(),
        });
    }
    Ok(())
}

/// The unique permutation with the same relative order as `values`.
pub fn flatten(values: &[usize]) -> Result<Permutation, PermError> {
    let mut order: Vec<usize> = (0..values.len()).collect();
    order.sort_by_key(|&i| values[i]);
    for pair in order.windows(2) {
        if values[pair[0]] == values[pair[1]] {
            return Err(PermError::Duplicate {
                position: pair[1].max(pair[0]),
                value: values[pair[0]],
            });
        }
    }
    if values.len() > MAX_DEGREE {
        return Err(PermError::TooLarge(values.len()));
    }
    let mut images = vec![0u8; values.len()];
    for (rank, &i) in order.iter().enumerate() {
        images[i] = rank as u8;
    }
    Ok(Permutation { images })
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let n = self.degree();
        if n == 0 || n > DIGITS.len() {
            write!(f, "[")?;
            for (i, v) in self.images.iter().enumerate() {
                if i > 0 {
                    write!(f, ",")?;
                }
                write!(f, "{v}")?;
            }
            return write!(f, "]");
        }
        for &v in &self.images {
            write!(f, "{}", DIGITS[v as usize] as char)?;
        }
        Ok(())
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Permutation({self})")
    }
}

impl FromStr for Permutation {
    type Err = PermError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Permutation::parse(s)
    }
}

/// Lexicographic enumeration of `S_n`.
pub struct AllPermutations {
    next: Option<Permutation>,
}

impl Iterator for AllPermutations {
    type Item = Permutation;

    fn next(&mut self) -> Option<Permutation> {
        let current = self.next.take()?;
        let mut w = current.images.clone();
        let n = w.len();
        if n >= 2 {
            if let Some(i) = (0..n - 1).rev().find(|&i| w[i] < w[i + 1]) {
                let j = (i + 1..n).rev().find(|&j| w[j] > w[i]).unwrap();
                w.swap(i, j);
                w[i + 1..].reverse();
                self.next = Some(Permutation { images: w });
            }
        }
        Some(current)
    }
}

/// A set of generator indices, `s_i ↦ i`.
#[derive(Clone, Copy, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DescentSet(u128);

impl DescentSet {
    pub const fn empty() -> Self {
        DescentSet(0)
    }

    pub fn bits(self) -> u128 {
        self.0
    }

    pub fn insert(&mut self, i: usize) {
        self.0 |= 1 << i;
    }

    pub fn with(mut self, i: usize) -> Self {
        self.insert(i);
        self
    }

    pub fn contains(self, i: usize) -> bool {
        i < 128 && self.0 >> i & 1 == 1
    }

    pub fn is_superset(self, other: DescentSet) -> bool {
        other.0 & !self.0 == 0
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn iter(self) -> impl Iterator<Item = usize> {
        (0..128).filter(move |&i| self.0 >> i & 1 == 1)
    }

    pub fn first(self) -> Option<usize> {
        (self.0 != 0).then(|| self.0.trailing_zeros() as usize)
    }

    pub fn last(self) -> Option<usize> {
        (self.0 != 0).then(|| 127 - self.0.leading_zeros() as usize)
    }
}

impl FromIterator<usize> for DescentSet {
    fn from_iter<T: IntoIterator<Item = usize>>(iter: T) -> Self {
        let mut set = DescentSet::empty();
        for i in iter {
            set.insert(i);
        }
        set
    }
}

impl fmt::Debug for DescentSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}
