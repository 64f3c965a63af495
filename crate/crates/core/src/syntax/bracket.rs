use super::Symbol;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Bracket {
    Open,
    Close,
}

/// The brackets of `word` in order, each with its 1-based position in `word`.
pub fn bracket_subsequence(word: &[Symbol]) -> Vec<(usize, Bracket)> {
    word.iter()
        .enumerate()
        .filter_map(|(i, s)| match s {
            Symbol::LeftParen => Some((i + 1, Bracket::Open)),
            Symbol::RightParen => Some((i + 1, Bracket::Close)),
            _ => None,
        })
        .collect()
}

/// The good bracketing of a bracket word, if there is one.
///
/// Blocks are `(i, j)` with 1-based `i < j`, `word[i]` opening and `word[j]`
/// closing, no two blocks crossing. At most one such partition exists; the
/// stack matching finds it whenever it exists.
pub fn good_bracketing(word: &[Bracket]) -> Option<Vec<(usize, usize)>> {
    let mut open = Vec::new();
    let mut blocks = Vec::with_capacity(word.len() / 2);
    for (i, b) in word.iter().enumerate() {
        match b {
            Bracket::Open => open.push(i + 1),
            Bracket::Close => blocks.push((open.pop()?, i + 1)),
        }
    }
    if !open.is_empty() {
        return None;
    }
    blocks.sort_unstable();
    Some(blocks)
}

#[cfg(test)]
mod tests {
    use super::Bracket::{Close as C, Open as O};
    use super::*;

    #[test]
    fn nested_and_sequential() {
        assert_eq!(good_bracketing(&[O, O, C, C]), Some(vec![(1, 4), (2, 3)]));
        assert_eq!(good_bracketing(&[O, C, O, C]), Some(vec![(1, 2), (3, 4)]));
    }

    #[test]
    fn unmatched() {
        assert_eq!(good_bracketing(&[C, O]), None);
        assert_eq!(good_bracketing(&[O]), None);
        assert_eq!(good_bracketing(&[O, C, C]), None);
        assert_eq!(good_bracketing(&[]), Some(vec![]));
    }
}
