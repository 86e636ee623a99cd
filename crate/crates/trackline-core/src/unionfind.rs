//! Union-find with an optional parity label per element.

use alloc::vec::Vec;

#[derive(Clone, Debug)]
pub struct UnionFind {
    parent: Vec<usize>,
    /// Parity of each element relative to its parent.
    parity: Vec<bool>,
}

impl UnionFind {
    pub fn new(n: usize) -> Self {
        UnionFind { parent: (0..n).collect(), parity: alloc::vec![false; n] }
    }

    pub fn len(&self) -> usize {
        self.parent.len()
    }

    /// Root of `x` and the parity of `x` relative to it.
    pub fn find_parity(&mut self, x: usize) -> (usize, bool) {
        let mut path = Vec::new();
        let mut r = x;
        while self.parent[r] != r {
            path.push(r);
            r = self.parent[r];
        }
        // path compression, accumulating parity from the top down
        let mut acc = false;
        for &y in path.iter().rev() {
            acc ^= self.parity[y];
            self.parity[y] = acc;
            self.parent[y] = r;
        }
        (r, if path.is_empty() { false } else { self.parity[x] })
    }

    pub fn find(&mut self, x: usize) -> usize {
        self.find_parity(x).0
    }

    pub fn union(&mut self, a: usize, b: usize) -> bool {
        self.union_parity(a, b, false).is_some()
    }

    /// Records `label(a) xor label(b) == odd`. Returns `Some(merged)`, or
    /// `None` when the constraint contradicts earlier ones.
    pub fn union_parity(&mut self, a: usize, b: usize, odd: bool) -> Option<bool> {
        let (ra, pa) = self.find_parity(a);
        let (rb, pb) = self.find_parity(b);
        if ra == rb {
            return if pa ^ pb == odd { Some(false) } else { None };
        }
        let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
        self.parent[hi] = lo;
        self.parity[hi] = pa ^ pb ^ odd;
        Some(true)
    }

    /// Dense labels `0..k` for the classes, numbered by least member.
    pub fn labels(&mut self) -> (Vec<usize>, usize) {
        let n = self.len();
        let mut label = alloc::vec![usize::MAX; n];
        let mut out = alloc::vec![0; n];
        let mut k = 0;
        for x in 0..n {
            let r = self.find(x);
            if label[r] == usize::MAX {
                label[r] = k;
                k += 1;
            }
            out[x] = label[r];
        }
        (out, k)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parity_constraints() {
        let mut uf = UnionFind::new(4);
        assert_eq!(uf.union_parity(0, 1, true), Some(true));
        assert_eq!(uf.union_parity(1, 2, true), Some(true));
        assert_eq!(uf.union_parity(0, 2, false), Some(false));
        assert_eq!(uf.union_parity(0, 2, true), None);
        assert_eq!(uf.find_parity(2).1, false);
        assert_eq!(uf.find_parity(1).1, true);
        let (labels, k) = uf.labels();
        assert_eq!(k, 2);
        assert_eq!(labels, [0, 0, 0, 1]);
    }
}
