//! Roots `[i,j] = e_i - e_j` of type `A_{n-1}` and permutations of `1..n`.

use std::fmt;

use serde::Serialize;

/// The root `e_i - e_j`, indices 1-based.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Root {
    pub i: usize,
    pub j: usize,
}

impl fmt::Debug for Root {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{},{}]", self.i, self.j)
    }
}

impl fmt::Display for Root {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

impl Root {
    pub fn new(i: usize, j: usize) -> Self {
        assert!(i != j && i >= 1 && j >= 1, "invalid root [{i},{j}]");
        Root { i, j }
    }

    /// The simple root `[r, r+1]`.
    pub fn simple(r: usize) -> Self {
        Root::new(r, r + 1)
    }

    pub fn is_positive(&self) -> bool {
        self.i < self.j
    }

    pub fn is_simple(&self) -> bool {
        self.j == self.i + 1
    }

    pub fn height(&self) -> i64 {
        self.j as i64 - self.i as i64
    }

    pub fn neg(&self) -> Root {
        Root { i: self.j, j: self.i }
    }
}

/// `[i,j] + [j,k] = [i,k]`; `None` when the formal sum is not a root.
pub fn root_sum(r: Root, s: Root) -> Option<Root> {
    if r.j == s.i && r.i != s.j {
        Some(Root { i: r.i, j: s.j })
    } else if s.j == r.i && s.i != r.j {
        Some(Root { i: s.i, j: r.j })
    } else {
        None
    }
}

/// Standard inner product of `e_i - e_j` and `e_k - e_l`.
pub fn root_inner(r: Root, s: Root) -> i64 {
    let d = |a: usize, b: usize| (a == b) as i64;
    d(r.i, s.i) - d(r.i, s.j) - d(r.j, s.i) + d(r.j, s.j)
}

pub fn root_orth(r: Root, s: Root) -> bool {
    root_inner(r, s) == 0
}

/// A permutation of `1..n`, stored 0-based: `img[k]` is the image of `k`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Perm {
    pub img: Vec<usize>,
}

impl Perm {
    pub fn identity(n: usize) -> Self {
        Perm { img: (0..n).collect() }
    }

    /// The transposition of the 1-based points `a` and `b`.
    pub fn transposition(n: usize, a: usize, b: usize) -> Self {
        let mut p = Self::identity(n);
        p.img.swap(a - 1, b - 1);
        p
    }

    pub fn n(&self) -> usize {
        self.img.len()
    }

    /// Image of a 1-based point.
    pub fn apply(&self, k: usize) -> usize {
        self.img[k - 1] + 1
    }

    /// `(self * other)(k) = self(other(k))`.
    pub fn compose(&self, other: &Perm) -> Perm {
        Perm { img: other.img.iter().map(|&k| self.img[k]).collect() }
    }

    pub fn inverse(&self) -> Perm {
        let mut inv = vec![0; self.n()];
        for (k, &v) in self.img.iter().enumerate() {
            inv[v] = k;
        }
        Perm { img: inv }
    }

    pub fn sign(&self) -> i64 {
        let mut inv = 0;
        for a in 0..self.n() {
            for b in a + 1..self.n() {
                if self.img[a] > self.img[b] {
                    inv += 1;
                }
            }
        }
        if inv % 2 == 0 {
            1
        } else {
            -1
        }
    }

    /// All permutations of `0..n` in lexicographic order of images.
    pub fn all(n: usize) -> Vec<Perm> {
        let mut out = Vec::new();
        let mut cur = Vec::with_capacity(n);
        let mut used = vec![false; n];
        fn rec(n: usize, cur: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<Perm>) {
            if cur.len() == n {
                out.push(Perm { img: cur.clone() });
                return;
            }
            for k in 0..n {
                if !used[k] {
                    used[k] = true;
                    cur.push(k);
                    rec(n, cur, used, out);
                    cur.pop();
                    used[k] = false;
                }
            }
        }
        rec(n, &mut cur, &mut used, &mut out);
        out
    }

    /// Writes the permutation as `s_{i_1} ... s_{i_k}` (1-based simple
    /// transpositions) by bubble sort.
    pub fn simple_word(&self) -> Vec<usize> {
        let mut cur = self.img.clone();
        let mut found = Vec::new();
        loop {
            match (0..cur.len().saturating_sub(1)).find(|&i| cur[i] > cur[i + 1]) {
                Some(i) => {
                    cur.swap(i, i + 1);
                    found.push(i + 1);
                }
                None => break,
            }
        }
        found.reverse();
        found
    }
}

pub fn root_apply(w: &Perm, r: Root) -> Root {
    Root { i: w.apply(r.i), j: w.apply(r.j) }
}

/// Simple roots `[1,2], ..., [n-1,n]`.
pub fn simple_roots(n: usize) -> Vec<Root> {
    (1..n).map(Root::simple).collect()
}

/// Positive roots ordered by height, then lexicographically.
pub fn positive_roots(n: usize) -> Vec<Root> {
    let mut out = Vec::new();
    for h in 1..n {
        for i in 1..=n - h {
            out.push(Root::new(i, i + h));
        }
    }
    out
}
