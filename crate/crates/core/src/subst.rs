//! Index-exact word substitution: `rep`, `rep0`, `sub1` and `sub2`.
//!
//! All positions are 1-based and intervals are closed, so `[l, m]` covers
//! `m - l + 1` symbols. The operations are generic over the alphabet.

use std::fmt;

use thiserror::Error;

use crate::syntax::Span;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Interval {
    start: usize,
    end: usize,
}

impl Interval {
    /// Requires `1 <= l <= m`.
    pub fn new(l: usize, m: usize) -> Result<Self, SubstError> {
        if l == 0 || l > m {
            return Err(SubstError::InvalidInterval { l, m });
        }
        Ok(Interval { start: l, end: m })
    }

    pub fn start(&self) -> usize {
        self.start
    }

    pub fn end(&self) -> usize {
        self.end
    }

    #[allow(clippy::len_without_is_empty)]
    pub fn len(&self) -> usize {
        self.end + 1 - self.start
    }

    pub fn is_disjoint(&self, other: &Interval) -> bool {
        self.end < other.start || other.end < self.start
    }

    fn check_within(&self, len: usize) -> Result<(), SubstError> {
        if self.end > len {
            return Err(SubstError::IndexOutOfRange {
                l: self.start,
                m: self.end,
                len,
            });
        }
        Ok(())
    }
}

impl From<Span> for Interval {
    fn from(s: Span) -> Self {
        Interval {
            start: s.start,
            end: s.end,
        }
    }
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{},{}]", self.start, self.end)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum SubstError {
    #[error("substitution operands must be nonempty words")]
    EmptyWord,
    #[error("invalid interval [{l},{m}]")]
    InvalidInterval { l: usize, m: usize },
    #[error("interval [{l},{m}] does not fit in a word of length {len}")]
    IndexOutOfRange { l: usize, m: usize, len: usize },
    #[error("intervals {first} and {second} overlap")]
    OverlappingIntervals { first: Interval, second: Interval },
    #[error("source symbol #{index} of the renaming repeats an earlier source")]
    DuplicateSource { index: usize },
}

fn checked(u_len: usize, l: usize, m: usize) -> Result<Interval, SubstError> {
    let iv = Interval::new(l, m).map_err(|_| SubstError::IndexOutOfRange { l, m, len: u_len })?;
    iv.check_within(u_len)?;
    Ok(iv)
}

/// Replaces the segment `[l, m]` of `u` by `v`.
///
/// The result has length `|u| - (m - l + 1) + |v|`.
pub fn rep<T: Clone>(u: &[T], v: &[T], l: usize, m: usize) -> Result<Vec<T>, SubstError> {
    if u.is_empty() || v.is_empty() {
        return Err(SubstError::EmptyWord);
    }
    checked(u.len(), l, m)?;
    Ok(splice(u, v, l, m))
}

fn splice<T: Clone>(u: &[T], v: &[T], l: usize, m: usize) -> Vec<T> {
    let mut out = Vec::with_capacity(u.len() - (m - l + 1) + v.len());
    out.extend_from_slice(&u[..l - 1]);
    out.extend_from_slice(v);
    out.extend_from_slice(&u[m..]);
    out
}

/// `rep` that also reports where a second, disjoint interval `[l2, m2]` ends up.
pub fn rep0<T: Clone>(
    u: &[T],
    v: &[T],
    l: usize,
    m: usize,
    l2: usize,
    m2: usize,
) -> Result<(Vec<T>, usize, usize), SubstError> {
    if u.is_empty() || v.is_empty() {
        return Err(SubstError::EmptyWord);
    }
    let first = checked(u.len(), l, m)?;
    let second = checked(u.len(), l2, m2)?;
    if !first.is_disjoint(&second) {
        return Err(SubstError::OverlappingIntervals { first, second });
    }
    let w = splice(u, v, l, m);
    if m2 < l {
        Ok((w, l2, m2))
    } else {
        // l2 > m; the tracked interval moves by |v| - (m - l + 1)
        let removed = m - l + 1;
        Ok((w, l2 + v.len() - removed, m2 + v.len() - removed))
    }
}

/// Simultaneous symbol-for-symbol renaming `a_i -> b_i`.
pub fn sub1<T: Clone + PartialEq>(u: &[T], renaming: &[(T, T)]) -> Result<Vec<T>, SubstError> {
    if u.is_empty() {
        return Err(SubstError::EmptyWord);
    }
    for (i, (a, _)) in renaming.iter().enumerate() {
        if renaming[..i].iter().any(|(b, _)| b == a) {
            return Err(SubstError::DuplicateSource { index: i + 1 });
        }
    }
    Ok(u.iter()
        .map(|s| {
            renaming
                .iter()
                .find(|(a, _)| a == s)
                .map_or_else(|| s.clone(), |(_, b)| b.clone())
        })
        .collect())
}

/// Replaces each interval of `u` by its word.
///
/// The intervals must be pairwise disjoint, so the result does not depend on
/// the order in which the replacements are listed. Patches are applied from
/// the rightmost interval leftwards, which leaves the positions of the
/// remaining intervals untouched.
pub fn sub2<T: Clone, V: AsRef<[T]>>(
    u: &[T],
    replacements: &[(V, Interval)],
) -> Result<Vec<T>, SubstError> {
    if u.is_empty() || replacements.iter().any(|(v, _)| v.as_ref().is_empty()) {
        return Err(SubstError::EmptyWord);
    }
    let mut order: Vec<&(V, Interval)> = replacements.iter().collect();
    order.sort_by_key(|(_, iv)| iv.start);
    for (_, iv) in &order {
        iv.check_within(u.len())?;
    }
    for pair in order.windows(2) {
        let (a, b) = (pair[0].1, pair[1].1);
        if !a.is_disjoint(&b) {
            return Err(SubstError::OverlappingIntervals {
                first: a,
                second: b,
            });
        }
    }
    let mut out = u.to_vec();
    for (v, iv) in order.into_iter().rev() {
        out.splice(iv.start - 1..iv.end, v.as_ref().iter().cloned());
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(s: &str) -> Vec<char> {
        s.split_whitespace()
            .map(|t| t.chars().next().unwrap())
            .collect()
    }

    fn iv(l: usize, m: usize) -> Interval {
        Interval::new(l, m).unwrap()
    }

    #[test]
    fn rep_examples() {
        assert_eq!(rep(&w("a b c d e"), &w("X Y"), 2, 4).unwrap(), w("a X Y e"));
        let u = w("a b c");
        assert_eq!(rep(&u, &w("Q"), 1, 3).unwrap(), w("Q"));
        assert_eq!(rep(&w("a"), &w("b c"), 1, 1).unwrap(), w("b c"));
    }

    #[test]
    fn rep_errors() {
        assert_eq!(
            rep(&w("a b"), &w("c"), 2, 3),
            Err(SubstError::IndexOutOfRange { l: 2, m: 3, len: 2 })
        );
        assert!(rep(&w("a b"), &w("c"), 0, 1).is_err());
        assert!(rep(&w("a b"), &w("c"), 2, 1).is_err());
        assert_eq!(rep(&w("a b"), &[], 1, 1), Err(SubstError::EmptyWord));
        assert_eq!(rep::<char>(&[], &w("a"), 1, 1), Err(SubstError::EmptyWord));
    }

    #[test]
    fn rep0_examples() {
        assert_eq!(
            rep0(&w("a b c d e"), &w("X Y"), 4, 5, 1, 2).unwrap(),
            (w("a b c X Y"), 1, 2)
        );
        assert_eq!(
            rep0(&w("a b c d e"), &w("X"), 1, 2, 4, 5).unwrap(),
            (w("X c d e"), 3, 4)
        );
        assert!(matches!(
            rep0(&w("a b c d e"), &w("X"), 2, 3, 2, 3),
            Err(SubstError::OverlappingIntervals { .. })
        ));
        assert!(matches!(
            rep0(&w("a b c d e"), &w("X"), 2, 3, 3, 5),
            Err(SubstError::OverlappingIntervals { .. })
        ));
    }

    #[test]
    fn sub1_examples() {
        assert_eq!(sub1(&w("x x"), &[('x', 'y')]).unwrap(), w("y y"));
        assert_eq!(sub1(&w("a b"), &[('q', 'r')]).unwrap(), w("a b"));
        // simultaneous, not sequential
        assert_eq!(
            sub1(&w("a b"), &[('a', 'b'), ('b', 'a')]).unwrap(),
            w("b a")
        );
        assert_eq!(
            sub1(&w("a b"), &[('a', 'b'), ('a', 'c')]),
            Err(SubstError::DuplicateSource { index: 2 })
        );
    }

    #[test]
    fn sub2_examples() {
        let u = w("a b c d e");
        let reps = [(w("X"), iv(1, 1)), (w("Y Z"), iv(3, 4))];
        assert_eq!(sub2(&u, &reps).unwrap(), w("X b Y Z e"));
        let rev = [reps[1].clone(), reps[0].clone()];
        assert_eq!(sub2(&u, &rev).unwrap(), w("X b Y Z e"));
        assert_eq!(
            sub2(&u, &[(w("Q R S"), iv(2, 3))]).unwrap(),
            rep(&u, &w("Q R S"), 2, 3).unwrap()
        );
    }

    #[test]
    fn sub2_errors() {
        let u = w("a b c d e");
        assert!(matches!(
            sub2(&u, &[(w("X"), iv(1, 2)), (w("Y"), iv(2, 3))]),
            Err(SubstError::OverlappingIntervals { .. })
        ));
        assert!(matches!(
            sub2(&u, &[(w("X"), iv(5, 6))]),
            Err(SubstError::IndexOutOfRange { .. })
        ));
        assert_eq!(
            sub2(&u, &[(Vec::<char>::new(), iv(1, 1))]),
            Err(SubstError::EmptyWord)
        );
    }
}
