//! Paths in a quiver, composed left to right.

use std::cmp::Ordering;

use smallvec::SmallVec;

use crate::error::{invalid, Result};
use crate::quiver::{ArrowId, Quiver, Vertex};

pub type Word = SmallVec<[ArrowId; 24]>;

/// A path `a_1 a_2 ⋯ a_l` with `t(a_i) = s(a_{i+1})`, or a trivial path `e_v`.
///
/// Paths are ordered degree-lexicographically: first by length, then by the
/// arrow indices read left to right; trivial paths are ordered by vertex.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Path {
    source: Vertex,
    target: Vertex,
    arrows: Word,
}

impl Ord for Path {
    fn cmp(&self, other: &Self) -> Ordering {
        self.arrows
            .len()
            .cmp(&other.arrows.len())
            .then_with(|| self.arrows.cmp(&other.arrows))
            .then_with(|| self.source.cmp(&other.source))
    }
}

impl PartialOrd for Path {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Path {
    pub fn trivial(v: Vertex) -> Self {
        Path { source: v, target: v, arrows: Word::new() }
    }

    pub fn arrow(q: &Quiver, a: ArrowId) -> Self {
        let mut arrows = Word::new();
        arrows.push(a);
        Path { source: q.source(a), target: q.target(a), arrows }
    }

    /// Checks composability; an empty word is rejected because it has no vertex.
    pub fn from_arrows(q: &Quiver, word: &[ArrowId]) -> Result<Self> {
        let Some(&first) = word.first() else {
            return invalid("empty arrow word; use Path::trivial");
        };
        for w in word.windows(2) {
            if q.target(w[0]) != q.source(w[1]) {
                return invalid(format!(
                    "arrows {} and {} do not compose",
                    q.arrow(w[0]).name,
                    q.arrow(w[1]).name
                ));
            }
        }
        Ok(Path { source: q.source(first), target: q.target(word[word.len() - 1]), arrows: word.into() })
    }

    pub fn from_names(q: &Quiver, names: &[&str]) -> Result<Self> {
        let mut word = Word::new();
        for n in names {
            match q.arrow_id(n) {
                Some(a) => word.push(a),
                None => return invalid(format!("unknown arrow {n}")),
            }
        }
        Self::from_arrows(q, &word)
    }

    /// Builds a path without checking composability.
    pub(crate) fn from_word_unchecked(source: Vertex, target: Vertex, arrows: Word) -> Self {
        Path { source, target, arrows }
    }

    pub fn len(&self) -> usize {
        self.arrows.len()
    }

    pub fn is_trivial(&self) -> bool {
        self.arrows.is_empty()
    }

    pub fn source(&self) -> Vertex {
        self.source
    }

    pub fn target(&self) -> Vertex {
        self.target
    }

    pub fn arrows(&self) -> &[ArrowId] {
        &self.arrows
    }

    pub fn is_cycle(&self) -> bool {
        self.source == self.target
    }

    /// `self · other`, or `None` when the endpoints do not match.
    pub fn concat(&self, other: &Path) -> Option<Path> {
        if self.target != other.source {
            return None;
        }
        if self.is_trivial() {
            return Some(other.clone());
        }
        let mut arrows = self.arrows.clone();
        arrows.extend_from_slice(&other.arrows);
        Some(Path { source: self.source, target: other.target, arrows })
    }

    /// The subpath made of arrows `i..j`; `e_{s(a_i)}` when `i == j`.
    pub fn slice(&self, q: &Quiver, i: usize, j: usize) -> Path {
        let source = if i < self.len() { q.source(self.arrows[i]) } else { self.target };
        let target = if j > 0 { q.target(self.arrows[j - 1]) } else { self.source };
        if i == j {
            return Path::trivial(source);
        }
        Path { source, target, arrows: self.arrows[i..j].into() }
    }

    /// The rotation starting at arrow `r` of a cycle.
    pub fn rotate(&self, q: &Quiver, r: usize) -> Path {
        if self.is_trivial() {
            return self.clone();
        }
        let mut arrows = Word::with_capacity(self.len());
        arrows.extend_from_slice(&self.arrows[r..]);
        arrows.extend_from_slice(&self.arrows[..r]);
        let v = q.source(arrows[0]);
        Path { source: v, target: v, arrows }
    }

    pub fn display(&self, q: &Quiver) -> String {
        if self.is_trivial() {
            return format!("e{}", q.label(self.source));
        }
        self.names(q).join("*")
    }

    pub fn names(&self, q: &Quiver) -> Vec<String> {
        if self.is_trivial() {
            return vec![format!("e{}", q.label(self.source))];
        }
        self.arrows.iter().map(|&a| q.arrow(a).name.clone()).collect()
    }
}
