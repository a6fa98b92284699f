//! Self-maps of `{1, ..., n}` that fix `n`, n-potency, and the bijection
//! between n-potent maps and labeled trees rooted at `n`.
//!
//! A map is *n-potent* when every element reaches `n` under iteration. Because
//! an orbit of length `n` must revisit a value, it is enough to check that
//! `f^(n-1)(i) = n` for every `i`.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// A map `f: {1..n} -> {1..n}` stored as its image array, `images[i-1] = f(i)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct EndoMap {
    images: Vec<usize>,
}

impl EndoMap {
    pub fn new(images: Vec<usize>) -> Result<EndoMap> {
        let n = images.len();
        if n == 0 {
            return Err(Error::InvalidMap("empty map".into()));
        }
        if let Some(&bad) = images.iter().find(|&&v| v == 0 || v > n) {
            return Err(Error::InvalidMap(format!("image {bad} outside 1..={n}")));
        }
        Ok(EndoMap { images })
    }

    /// Like [`EndoMap::new`], additionally requiring `f(n) = n`.
    pub fn n_fixing(images: Vec<usize>) -> Result<EndoMap> {
        let f = EndoMap::new(images)?;
        if !f.fixes_n() {
            return Err(Error::InvalidMap(format!("{f} does not fix n")));
        }
        Ok(f)
    }

    /// The map sending every element to `n`.
    pub fn constant_n(n: usize) -> EndoMap {
        assert!(n >= 1);
        EndoMap { images: vec![n; n] }
    }

    pub fn identity(n: usize) -> EndoMap {
        assert!(n >= 1);
        EndoMap {
            images: (1..=n).collect(),
        }
    }

    pub fn n(&self) -> usize {
        self.images.len()
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    pub fn apply(&self, i: usize) -> usize {
        self.images[i - 1]
    }

    pub fn fixes_n(&self) -> bool {
        self.apply(self.n()) == self.n()
    }

    /// `f^k(i)`.
    pub fn iterate(&self, i: usize, k: usize) -> Result<usize> {
        let n = self.n();
        if i == 0 || i > n {
            return Err(Error::IndexOutOfRange { index: i, n });
        }
        Ok((0..k).fold(i, |v, _| self.apply(v)))
    }

    /// Whether `f^(n-1)(i) = n` for every `i`. Requires `f(n) = n`.
    pub fn is_n_potent(&self) -> Result<bool> {
        if !self.fixes_n() {
            return Err(Error::InvalidMap(format!("{self} does not fix n")));
        }
        let n = self.n();
        Ok((1..=n).all(|i| self.reaches_n(i)))
    }

    /// `f^(n-1)(i) = n`, walking at most `n - 1` steps.
    fn reaches_n(&self, i: usize) -> bool {
        let n = self.n();
        let mut v = i;
        for _ in 0..n - 1 {
            if v == n {
                return true;
            }
            v = self.apply(v);
        }
        v == n
    }

    /// `|f^{-1}(n)|`.
    pub fn preimage_count_of_n(&self) -> usize {
        let n = self.n();
        self.images.iter().filter(|&&v| v == n).count()
    }
}

/// Comma-separated images, e.g. `3,1,3`.
impl fmt::Display for EndoMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.images.iter().map(ToString::to_string).collect();
        f.write_str(&parts.join(","))
    }
}

impl FromStr for EndoMap {
    type Err = Error;

    fn from_str(s: &str) -> Result<EndoMap> {
        let images = s
            .split(',')
            .map(|p| {
                p.trim()
                    .parse::<usize>()
                    .map_err(|e| Error::InvalidMap(format!("bad image {p:?}: {e}")))
            })
            .collect::<Result<Vec<_>>>()?;
        EndoMap::new(images)
    }
}

/// All `n^(n-1)` maps with `f(n) = n`, in lexicographic order of the images.
pub struct NFixingMaps {
    n: usize,
    next: Option<Vec<usize>>,
}

pub fn enumerate_n_fixing(n: usize) -> NFixingMaps {
    assert!(n >= 1, "n must be positive");
    NFixingMaps {
        n,
        next: Some(vec![1; n - 1].into_iter().chain([n]).collect()),
    }
}

impl Iterator for NFixingMaps {
    type Item = EndoMap;

    fn next(&mut self) -> Option<EndoMap> {
        let current = self.next.take()?;
        let mut succ = current.clone();
        // odometer over positions 1..n-1, last position varies fastest
        let mut pos = self.n - 1;
        while pos > 0 {
            if succ[pos - 1] < self.n {
                succ[pos - 1] += 1;
                self.next = Some(succ);
                break;
            }
            succ[pos - 1] = 1;
            pos -= 1;
        }
        Some(EndoMap { images: current })
    }
}

/// Every n-potent map exactly once, in lexicographic order; `n^(n-2)` maps for
/// `n >= 2` and the identity for `n = 1`.
///
/// Filters all `n^(n-1)` n-fixing maps, so the cost is exponential in `n`.
pub fn enumerate_n_potent(n: usize) -> impl Iterator<Item = EndoMap> {
    enumerate_n_fixing(n).filter(|f| f.is_n_potent().unwrap_or(false))
}

/// A labeled tree on `{1..n}` rooted at `n`, edges directed toward the root.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RootedTree {
    n: usize,
    parent: Vec<usize>,
}

impl RootedTree {
    /// `parent[i-1]` is the parent of vertex `i` for `i < n`.
    pub fn new(n: usize, parent: Vec<usize>) -> Result<RootedTree> {
        if n == 0 || parent.len() != n - 1 {
            return Err(Error::InvalidTree(format!(
                "{} parents given for {n} vertices",
                parent.len()
            )));
        }
        if let Some(&bad) = parent.iter().find(|&&p| p == 0 || p > n) {
            return Err(Error::InvalidTree(format!("parent {bad} outside 1..={n}")));
        }
        let tree = RootedTree { n, parent };
        if !tree.is_tree() {
            return Err(Error::InvalidTree(format!("{tree} contains a cycle")));
        }
        Ok(tree)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn root(&self) -> usize {
        self.n
    }

    pub fn parents(&self) -> &[usize] {
        &self.parent
    }

    pub fn parent(&self, i: usize) -> Option<usize> {
        (i < self.n).then(|| self.parent[i - 1])
    }

    /// Directed edges `(i, parent(i))`.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.parent.iter().enumerate().map(|(k, &p)| (k + 1, p))
    }

    /// Checks that the undirected edges `{i, parent(i)}` form a spanning tree:
    /// `n - 1` edges and no cycle, via union-find.
    pub fn is_tree(&self) -> bool {
        let mut uf: Vec<usize> = (0..=self.n).collect();
        fn find(uf: &mut [usize], mut x: usize) -> usize {
            while uf[x] != x {
                uf[x] = uf[uf[x]];
                x = uf[x];
            }
            x
        }
        for (a, b) in self.edges() {
            let (ra, rb) = (find(&mut uf, a), find(&mut uf, b));
            if ra == rb {
                return false;
            }
            uf[ra] = rb;
        }
        self.parent.len() + 1 == self.n
    }
}

/// Parent list `p(1),...,p(n-1)`, or `-` for the single-vertex tree.
impl fmt::Display for RootedTree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.parent.is_empty() {
            return f.write_str("-");
        }
        let parts: Vec<String> = self.parent.iter().map(ToString::to_string).collect();
        f.write_str(&parts.join(","))
    }
}

/// The tree with edges `(i, f(i))` for `i < n`.
pub fn map_to_tree(f: &EndoMap) -> Result<RootedTree> {
    if !f.is_n_potent()? {
        return Err(Error::NotNPotent(f.to_string()));
    }
    let n = f.n();
    RootedTree::new(n, f.images()[..n - 1].to_vec())
}

pub fn tree_to_map(t: &RootedTree) -> EndoMap {
    EndoMap {
        images: t.parent.iter().copied().chain([t.n]).collect(),
    }
}
