//! Word tries for locating leading words inside paths.

use crate::quiver::ArrowId;

#[derive(Clone, Debug, Default)]
struct Node {
    children: Vec<(ArrowId, u32)>,
    terminal: Option<usize>,
}

/// A set of words, each tagged with an element index.
#[derive(Clone, Debug)]
pub(crate) struct Trie {
    nodes: Vec<Node>,
}

impl Default for Trie {
    fn default() -> Self {
        Trie { nodes: vec![Node::default()] }
    }
}

impl Trie {
    fn child(&self, n: usize, a: ArrowId) -> Option<usize> {
        self.nodes[n].children.iter().find(|(b, _)| *b == a).map(|&(_, c)| c as usize)
    }

    pub fn insert(&mut self, word: impl IntoIterator<Item = ArrowId>, tag: usize) {
        let mut n = 0;
        for a in word {
            n = match self.child(n, a) {
                Some(c) => c,
                None => {
                    self.nodes.push(Node::default());
                    let c = self.nodes.len() - 1;
                    self.nodes[n].children.push((a, c as u32));
                    c
                }
            };
        }
        self.nodes[n].terminal = Some(tag);
    }

    pub fn remove(&mut self, word: impl IntoIterator<Item = ArrowId>) {
        let mut n = 0;
        for a in word {
            match self.child(n, a) {
                Some(c) => n = c,
                None => return,
            }
        }
        self.nodes[n].terminal = None;
    }

    /// Tag and length of the first stored word that is a prefix of `word`.
    pub fn prefix_of(&self, word: impl IntoIterator<Item = ArrowId>) -> Option<(usize, usize)> {
        let mut n = 0;
        for (i, a) in word.into_iter().enumerate() {
            n = self.child(n, a)?;
            if let Some(t) = self.nodes[n].terminal {
                return Some((t, i + 1));
            }
        }
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn finds_prefixes() {
        let mut t = Trie::default();
        t.insert([1, 2, 3], 7);
        t.insert([2], 8);
        assert_eq!(t.prefix_of([1, 2, 3, 4]), Some((7, 3)));
        assert_eq!(t.prefix_of([1, 2]), None);
        assert_eq!(t.prefix_of([2, 9]), Some((8, 1)));
        t.remove([2]);
        assert_eq!(t.prefix_of([2, 9]), None);
    }
}
