//! Finite digraphs on the vertex set `1..=n` and their text format.
//!
//! ```text
//! # the one-loop digraph on two vertices
//! vertices 2
//! 1 1
//! ```
//!
//! An arrow line `u v` means `u E v`, i.e. `u` is a D-element of `v`.

use std::fmt;

use thiserror::Error;

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum DigraphError {
    #[error("line {line}: bad header ({reason}); expected `vertices <n>` with n >= 1")]
    BadHeader { line: usize, reason: String },
    #[error("line {line}: expected `<u> <v>`")]
    BadArrow { line: usize },
    #[error("vertex {vertex} is outside 1..={n}")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("a digraph needs at least one vertex")]
    NoVertices,
}

/// A digraph `<[n], E>`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Digraph {
    n: usize,
    // row-major n x n, adjacency[(u-1)*n + (v-1)] <=> u E v
    adjacency: Vec<bool>,
    // sorted in-neighbors N(v), indexed by v-1
    in_neighbors: Vec<Vec<usize>>,
}

impl Digraph {
    /// Builds a digraph; repeated arrows are merged.
    pub fn new(
        n: usize,
        arrows: impl IntoIterator<Item = (usize, usize)>,
    ) -> Result<Self, DigraphError> {
        if n == 0 {
            return Err(DigraphError::NoVertices);
        }
        let mut adjacency = vec![false; n * n];
        for (u, v) in arrows {
            for w in [u, v] {
                if w == 0 || w > n {
                    return Err(DigraphError::VertexOutOfRange { vertex: w, n });
                }
            }
            adjacency[(u - 1) * n + (v - 1)] = true;
        }
        Ok(Self::from_adjacency(n, adjacency))
    }

    fn from_adjacency(n: usize, adjacency: Vec<bool>) -> Self {
        let in_neighbors = (1..=n)
            .map(|v| {
                (1..=n)
                    .filter(|&u| adjacency[(u - 1) * n + (v - 1)])
                    .collect()
            })
            .collect();
        Digraph {
            n,
            adjacency,
            in_neighbors,
        }
    }

    pub fn edgeless(n: usize) -> Result<Self, DigraphError> {
        Self::new(n, [])
    }

    /// The digraph whose only arrows are the loops at every vertex.
    pub fn all_loops(n: usize) -> Result<Self, DigraphError> {
        Self::new(n, (1..=n).map(|v| (v, v)))
    }

    /// Decodes the counter value `code`: arrow `(u, v)` is bit `(u-1)*n + (v-1)`.
    ///
    /// Requires `n * n <= 64`.
    pub fn from_code(n: usize, code: u64) -> Result<Self, DigraphError> {
        if n == 0 {
            return Err(DigraphError::NoVertices);
        }
        assert!(n * n <= 64, "counter encoding supports at most 8 vertices");
        let adjacency = (0..n * n).map(|bit| code >> bit & 1 == 1).collect();
        Ok(Self::from_adjacency(n, adjacency))
    }

    /// Inverse of [`Digraph::from_code`].
    pub fn code(&self) -> Option<u64> {
        if self.n * self.n > 64 {
            return None;
        }
        Some(
            self.adjacency
                .iter()
                .enumerate()
                .filter(|(_, &a)| a)
                .fold(0u64, |acc, (bit, _)| acc | 1 << bit),
        )
    }

    /// Number of vertices.
    pub fn order(&self) -> usize {
        self.n
    }

    pub fn vertices(&self) -> std::ops::RangeInclusive<usize> {
        1..=self.n
    }

    pub fn contains(&self, v: usize) -> bool {
        (1..=self.n).contains(&v)
    }

    /// `u E v`. Panics if either vertex is out of range.
    pub fn has_arrow(&self, u: usize, v: usize) -> bool {
        assert!(self.contains(u) && self.contains(v), "vertex out of range");
        self.adjacency[(u - 1) * self.n + (v - 1)]
    }

    /// `N(v)` in increasing order. Panics if `v` is out of range.
    pub fn in_neighbors(&self, v: usize) -> &[usize] {
        &self.in_neighbors[v - 1]
    }

    /// Arrows in lexicographic order.
    pub fn arrows(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        let n = self.n;
        self.adjacency
            .iter()
            .enumerate()
            .filter(|(_, &a)| a)
            .map(move |(i, _)| (i / n + 1, i % n + 1))
    }

    pub fn arrow_count(&self) -> usize {
        self.adjacency.iter().filter(|&&a| a).count()
    }

    pub fn max_in_degree(&self) -> usize {
        self.in_neighbors.iter().map(Vec::len).max().unwrap_or(0)
    }

    /// A copy without the arrow `u E v`.
    pub fn without_arrow(&self, u: usize, v: usize) -> Self {
        let mut adjacency = self.adjacency.clone();
        adjacency[(u - 1) * self.n + (v - 1)] = false;
        Self::from_adjacency(self.n, adjacency)
    }
}

/// Writes the text format.
impl fmt::Display for Digraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "vertices {}", self.n)?;
        for (u, v) in self.arrows() {
            writeln!(f, "{u} {v}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Digraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "Digraph(n={}, {:?})",
            self.n,
            self.arrows().collect::<Vec<_>>()
        )
    }
}

/// Parses the text format, returning the digraph and any repeated arrows (merged).
pub fn load_digraph_reporting(text: &str) -> Result<(Digraph, Vec<(usize, usize)>), DigraphError> {
    let mut n = None;
    let mut arrows = Vec::new();
    let mut duplicates = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let fields: Vec<&str> = content.split_whitespace().collect();
        let Some(n) = n else {
            let bad = |reason: &str| DigraphError::BadHeader {
                line,
                reason: reason.to_string(),
            };
            match fields[..] {
                ["vertices", count] => {
                    let count: usize = count
                        .parse()
                        .map_err(|_| bad("vertex count is not a number"))?;
                    if count == 0 {
                        return Err(bad("vertex count must be positive"));
                    }
                    n = Some(count);
                }
                _ => return Err(bad("first line must be the header")),
            }
            continue;
        };
        let [u, v] = fields[..] else {
            return Err(DigraphError::BadArrow { line });
        };
        let (u, v): (usize, usize) = match (u.parse(), v.parse()) {
            (Ok(u), Ok(v)) => (u, v),
            _ => return Err(DigraphError::BadArrow { line }),
        };
        for w in [u, v] {
            if w == 0 || w > n {
                return Err(DigraphError::VertexOutOfRange { vertex: w, n });
            }
        }
        if arrows.contains(&(u, v)) {
            duplicates.push((u, v));
        } else {
            arrows.push((u, v));
        }
    }
    let n = n.ok_or(DigraphError::BadHeader {
        line: 1,
        reason: "missing header".into(),
    })?;
    Ok((Digraph::new(n, arrows)?, duplicates))
}

pub fn load_digraph(text: &str) -> Result<Digraph, DigraphError> {
    load_digraph_reporting(text).map(|(d, _)| d)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn single_arrow() {
        let d = load_digraph("vertices 2\n1 2\n").unwrap();
        assert_eq!(d.order(), 2);
        assert_eq!(d.arrows().collect::<Vec<_>>(), vec![(1, 2)]);
        assert_eq!(d.in_neighbors(2), &[1]);
        assert!(d.has_arrow(1, 2));
        assert!(!d.has_arrow(2, 1));
    }

    #[test]
    fn header_only() {
        let d = load_digraph("# nothing\nvertices 1\n").unwrap();
        assert_eq!(d, Digraph::edgeless(1).unwrap());
    }

    #[test]
    fn errors() {
        assert_eq!(
            load_digraph("vertices 2\n3 1\n"),
            Err(DigraphError::VertexOutOfRange { vertex: 3, n: 2 })
        );
        assert!(matches!(
            load_digraph("vertices 0"),
            Err(DigraphError::BadHeader { .. })
        ));
        assert!(matches!(
            load_digraph("1 2"),
            Err(DigraphError::BadHeader { .. })
        ));
        assert!(matches!(
            load_digraph(""),
            Err(DigraphError::BadHeader { .. })
        ));
        assert!(matches!(
            load_digraph("vertices 2\n1 2 3\n"),
            Err(DigraphError::BadArrow { line: 2 })
        ));
    }

    #[test]
    fn duplicates_are_reported_and_merged() {
        let (d, dup) = load_digraph_reporting("vertices 2\n1 2\n\n1 2 # again\n").unwrap();
        assert_eq!(d.arrow_count(), 1);
        assert_eq!(dup, vec![(1, 2)]);
    }

    #[test]
    fn text_round_trip_and_code() {
        let d = Digraph::new(4, [(1, 1), (2, 1), (1, 3), (2, 4)]).unwrap();
        assert_eq!(load_digraph(&d.to_string()).unwrap(), d);
        let code = d.code().unwrap();
        assert_eq!(Digraph::from_code(4, code).unwrap(), d);
        // arrow (1,1) is bit 0, (2,1) is bit 4
        assert_eq!(code & 1, 1);
        assert_eq!(code >> 4 & 1, 1);
    }
}
