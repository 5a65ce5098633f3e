//! Permutations, their mutual actions with forests, and symmetric forests.

use std::fmt;

use crate::error::{Error, Result};
use crate::forest::Forest;

/// A permutation of `{1..n}` stored as its image list.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    images: Vec<usize>,
}

impl Permutation {
    pub fn new(images: Vec<usize>) -> Result<Permutation> {
        let n = images.len();
        if n == 0 {
            return Err(Error::NotAPermutation("degree 0".into()));
        }
        let mut seen = vec![false; n];
        for &i in &images {
            if i == 0 || i > n || seen[i - 1] {
                return Err(Error::NotAPermutation(format!("{images:?}")));
            }
            seen[i - 1] = true;
        }
        Ok(Permutation { images })
    }

    pub fn identity(n: usize) -> Permutation {
        Permutation { images: (1..=n).collect() }
    }

    /// `j ↦ j + k mod n`.
    pub fn rotation(n: usize, k: usize) -> Permutation {
        Permutation { images: (0..n).map(|j| (j + k) % n + 1).collect() }
    }

    /// Build from disjoint cycles on `n` points.
    pub fn from_cycles(n: usize, cycles: &[Vec<usize>]) -> Result<Permutation> {
        let mut images: Vec<usize> = (1..=n).collect();
        let mut touched = vec![false; n];
        for cyc in cycles {
            for (i, &a) in cyc.iter().enumerate() {
                if a == 0 || a > n || touched[a - 1] {
                    return Err(Error::NotAPermutation(format!("cycle {cyc:?}")));
                }
                touched[a - 1] = true;
                images[a - 1] = cyc[(i + 1) % cyc.len()];
            }
        }
        Permutation::new(images)
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    pub fn apply(&self, j: usize) -> usize {
        self.images[j - 1]
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &v)| v == i + 1)
    }

    /// Power of the rotation `j ↦ j+1`.
    pub fn is_cyclic(&self) -> bool {
        let n = self.degree();
        let k = self.images[0] - 1;
        *self == Permutation::rotation(n, k)
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0; self.degree()];
        for (i, &v) in self.images.iter().enumerate() {
            inv[v - 1] = i + 1;
        }
        Permutation { images: inv }
    }

    /// `(σ ∘ τ)(j) = σ(τ(j))`.
    pub fn compose(&self, tau: &Permutation) -> Result<Permutation> {
        if self.degree() != tau.degree() {
            return Err(Error::DegreeMismatch(self.degree(), tau.degree()));
        }
        Ok(Permutation { images: tau.images.iter().map(|&j| self.apply(j)).collect() })
    }

    pub fn tensor(&self, other: &Permutation) -> Permutation {
        let n = self.degree();
        let mut images = self.images.clone();
        images.extend(other.images.iter().map(|j| j + n));
        Permutation { images }
    }

    pub fn tag(&self) -> TypeTag {
        if self.is_identity() {
            TypeTag::F
        } else if self.is_cyclic() {
            TypeTag::T
        } else {
            TypeTag::V
        }
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.images)
    }
}

pub fn perm_compose(sigma: &Permutation, tau: &Permutation) -> Result<Permutation> {
    sigma.compose(tau)
}

/// The pair `(f^π, π^f)`: tree `j` of `f` moves to position `π(j)`, and `π^f` sends the
/// leaves of tree `j` in order onto the leaves of its new position.
pub fn act_perm_on_forest(pi: &Permutation, f: &Forest) -> Result<(Forest, Permutation)> {
    let n = f.roots();
    if pi.degree() != n {
        return Err(Error::DegreeMismatch(pi.degree(), n));
    }
    let inv = pi.inverse();
    let moved: Vec<_> = (1..=n).map(|p| f.tree(inv.apply(p) - 1).clone()).collect();
    let moved = Forest::new(moved)?;
    let mut images = Vec::with_capacity(f.leaves());
    for j in 0..n {
        let start = moved.first_leaf_of(pi.apply(j + 1) - 1);
        images.extend(start..start + f.tree(j).leaves());
    }
    Ok((moved, Permutation { images }))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum TypeTag {
    F,
    T,
    V,
}

impl TypeTag {
    pub fn admits(self, p: &Permutation) -> bool {
        p.tag() <= self
    }
}

/// A forest followed by a permutation of its leaves.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SymmetricForest {
    pub forest: Forest,
    pub perm: Permutation,
    pub tag: TypeTag,
}

impl SymmetricForest {
    pub fn new(forest: Forest, perm: Permutation, tag: TypeTag) -> Result<SymmetricForest> {
        if perm.degree() != forest.leaves() {
            return Err(Error::DegreeMismatch(perm.degree(), forest.leaves()));
        }
        if !tag.admits(&perm) {
            return Err(Error::TagViolation(format!("{perm:?} is not of type {tag:?}")));
        }
        Ok(SymmetricForest { forest, perm, tag })
    }

    pub fn from_forest(forest: Forest) -> SymmetricForest {
        let n = forest.leaves();
        SymmetricForest { forest, perm: Permutation::identity(n), tag: TypeTag::F }
    }

    pub fn from_perm(perm: Permutation, tag: TypeTag) -> Result<SymmetricForest> {
        let f = Forest::identity(perm.degree())?;
        SymmetricForest::new(f, perm, tag)
    }

    /// `(f,σ)∘(g,τ) = (f∘g^σ, σ^g∘τ)`.
    pub fn compose(&self, other: &SymmetricForest) -> Result<SymmetricForest> {
        if self.forest.leaves() != other.forest.roots() {
            return Err(Error::ArityMismatch {
                expected: self.forest.leaves(),
                found: other.forest.roots(),
            });
        }
        let (g_sigma, sigma_g) = act_perm_on_forest(&self.perm, &other.forest)?;
        let forest = self.forest.compose(&g_sigma)?;
        let perm = sigma_g.compose(&other.perm)?;
        SymmetricForest::new(forest, perm, self.tag.max(other.tag))
    }

    pub fn tensor(&self, other: &SymmetricForest) -> SymmetricForest {
        let perm = self.perm.tensor(&other.perm);
        // the tensor of two rotations is in general not a rotation
        let tag = self.tag.max(other.tag).max(perm.tag());
        SymmetricForest { forest: self.forest.tensor(&other.forest), perm, tag }
    }
}

pub fn compose_symmetric(x: &SymmetricForest, y: &SymmetricForest) -> Result<SymmetricForest> {
    x.compose(y)
}

pub fn tensor_symmetric(x: &SymmetricForest, y: &SymmetricForest) -> SymmetricForest {
    x.tensor(y)
}
