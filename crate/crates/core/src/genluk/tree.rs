use std::fmt::Write;

use super::GenLukWord;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Node {
    /// Letter of the generalized word; 0 for canceled leaves.
    pub letter: i64,
    pub canceled: bool,
    pub children: Vec<usize>,
}

/// Explicit plane tree of a word, canceled leaves included.
///
/// A vertex with letter `-h` sits where `U(l)` has its last inserted zero;
/// the `h` zeros before it are the leaves it cancels.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PlaneTree {
    nodes: Vec<Node>,
}

impl PlaneTree {
    pub fn from_word(w: &GenLukWord) -> Self {
        // (letter, canceled) in preorder of U(l)
        let mut flat = Vec::new();
        for &l in w.letters() {
            if l < 0 {
                flat.extend(std::iter::repeat((0, true)).take(l.unsigned_abs() as usize));
            }
            flat.push((l, false));
        }
        let mut nodes: Vec<Node> = Vec::with_capacity(flat.len());
        // open vertices and their remaining child slots
        let mut open: Vec<(usize, usize)> = Vec::new();
        for (letter, canceled) in flat {
            let id = nodes.len();
            nodes.push(Node { letter, canceled, children: Vec::new() });
            if let Some((parent, slots)) = open.last_mut() {
                nodes[*parent].children.push(id);
                *slots -= 1;
                if *slots == 0 {
                    open.pop();
                }
            }
            if letter > 0 {
                open.push((id, letter as usize));
            }
            // a popped parent may leave its own parent full as well
            while open.last().is_some_and(|&(_, s)| s == 0) {
                open.pop();
            }
        }
        PlaneTree { nodes }
    }

    pub fn root(&self) -> &Node {
        &self.nodes[0]
    }

    pub fn node(&self, id: usize) -> &Node {
        &self.nodes[id]
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    /// Letters of the non-canceled vertices in preorder; equals the source word.
    pub fn word(&self) -> Vec<i64> {
        self.preorder().into_iter().filter(|&(id, _)| !self.nodes[id].canceled).map(|(id, _)| self.nodes[id].letter).collect()
    }

    fn preorder(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(self.nodes.len());
        let mut stack = vec![(0usize, 0usize)];
        while let Some((id, depth)) = stack.pop() {
            out.push((id, depth));
            for &c in self.nodes[id].children.iter().rev() {
                stack.push((c, depth + 1));
            }
        }
        out
    }

    /// Indented preorder listing: internal vertices by degree, real leaves as
    /// `•`, negative vertices by their letter, canceled leaves as `( )`.
    pub fn render(&self) -> String {
        let mut out = String::new();
        for (id, depth) in self.preorder() {
            let node = &self.nodes[id];
            let label = match (node.canceled, node.letter) {
                (true, _) => "( )".to_string(),
                (false, 0) => "•".to_string(),
                (false, l) => l.to_string(),
            };
            let _ = writeln!(out, "{}{}", "  ".repeat(depth), label);
        }
        out
    }
}
