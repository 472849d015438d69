//! Alternating bilinear forms over F₂.
//!
//! A [`SympSpace`] is a coordinate space `F₂^dim` together with a symmetric
//! Gram matrix whose diagonal vanishes. Over F₂ symmetry alone does not make
//! a form alternating, so both conditions are checked at construction.

use std::fmt;
use std::sync::OnceLock;

use rand::Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::gf2::{span_basis, BitMat, BitVec, Gf2Error};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SymplecticError {
    #[error("Gram matrix must be square, got {rows}x{cols}")]
    NotSquare { rows: usize, cols: usize },
    #[error("Gram matrix is not symmetric at ({0},{1})")]
    NotSymmetric(usize, usize),
    #[error("Gram matrix has a nonzero diagonal entry at {0}; the form is not alternating")]
    NotAlternating(usize),
    #[error("alternating form has odd rank {0}; Gram matrix is corrupted")]
    OddRank(usize),
    #[error("vector {vector} is not orthogonal to the radical of the subspace")]
    NotOrthogonalToRadical { vector: BitVec },
    #[error("invalid completion choice: {0}")]
    InvalidCompletion(&'static str),
    #[error(transparent)]
    Linear(#[from] Gf2Error),
}

/// The isomorphism type `(n, k)`: `n` hyperbolic planes and a `k`-dimensional radical.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(into = "[usize; 2]", from = "[usize; 2]")]
pub struct SpaceType {
    pub n: usize,
    pub k: usize,
}

impl SpaceType {
    #[must_use]
    pub const fn new(n: usize, k: usize) -> Self {
        Self { n, k }
    }

    #[must_use]
    pub const fn dim(self) -> usize {
        2 * self.n + self.k
    }
}

impl From<SpaceType> for [usize; 2] {
    fn from(t: SpaceType) -> Self {
        [t.n, t.k]
    }
}

impl From<[usize; 2]> for SpaceType {
    fn from([n, k]: [usize; 2]) -> Self {
        Self { n, k }
    }
}

impl fmt::Display for SpaceType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.n, self.k)
    }
}

/// `x`, `y` hyperbolic pairs and radical vectors `z`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SymplecticBasis {
    pub x: Vec<BitVec>,
    pub y: Vec<BitVec>,
    pub z: Vec<BitVec>,
}

impl SymplecticBasis {
    /// All basis vectors in the order `x₁, y₁, x₂, y₂, …, z₁, z₂, …`.
    #[must_use]
    pub fn ordered(&self) -> Vec<BitVec> {
        let mut out = Vec::with_capacity(2 * self.x.len() + self.z.len());
        for (x, y) in self.x.iter().zip(&self.y) {
            out.push(x.clone());
            out.push(y.clone());
        }
        out.extend(self.z.iter().cloned());
        out
    }

    /// Columns are the basis vectors in [`Self::ordered`] order.
    #[must_use]
    pub fn matrix(&self, dim: usize) -> BitMat {
        BitMat::from_cols(dim, &self.ordered()).expect("basis vectors share the space dimension")
    }
}

/// A possibly degenerate symplectic space `F₂^dim` with Gram matrix `gram`.
#[derive(Clone)]
pub struct SympSpace {
    gram: BitMat,
    basis: OnceLock<SymplecticBasis>,
}

impl PartialEq for SympSpace {
    fn eq(&self, other: &Self) -> bool {
        self.gram == other.gram
    }
}

impl Eq for SympSpace {}

impl fmt::Debug for SympSpace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("SympSpace").field("gram", &self.gram).finish()
    }
}

impl SympSpace {
    pub fn new(gram: BitMat) -> Result<Self, SymplecticError> {
        if !gram.is_square() {
            return Err(SymplecticError::NotSquare {
                rows: gram.rows(),
                cols: gram.cols(),
            });
        }
        let d = gram.rows();
        for i in 0..d {
            if gram.get(i, i) {
                return Err(SymplecticError::NotAlternating(i));
            }
            for j in (i + 1)..d {
                if gram.get(i, j) != gram.get(j, i) {
                    return Err(SymplecticError::NotSymmetric(i, j));
                }
            }
        }
        Ok(Self {
            gram,
            basis: OnceLock::new(),
        })
    }

    /// The zero form on `F₂^dim`.
    #[must_use]
    pub fn null(dim: usize) -> Self {
        Self::new(BitMat::zeros(dim, dim)).expect("zero form is alternating")
    }

    /// The standard space of type `(n, k)` in coordinates
    /// `x₁, y₁, …, xₙ, yₙ, z₁, …, z_k`.
    #[must_use]
    pub fn standard(ty: SpaceType) -> Self {
        let d = ty.dim();
        let mut g = BitMat::zeros(d, d);
        for i in 0..ty.n {
            g.set(2 * i, 2 * i + 1, true);
            g.set(2 * i + 1, 2 * i, true);
        }
        Self::new(g).expect("standard form is alternating")
    }

    #[must_use]
    pub fn dim(&self) -> usize {
        self.gram.rows()
    }

    #[must_use]
    pub fn gram(&self) -> &BitMat {
        &self.gram
    }

    /// `⟨u, v⟩`.
    ///
    /// # Panics
    /// Panics if either vector has the wrong dimension.
    #[must_use]
    pub fn pair(&self, u: &BitVec, v: &BitVec) -> bool {
        self.gram.bilinear(u, v).expect("vectors must live in this space")
    }

    /// The linear form `⟨v, ·⟩` as a coefficient vector.
    #[must_use]
    pub fn functional(&self, v: &BitVec) -> BitVec {
        self.gram.mul_vec(v).expect("vector must live in this space")
    }

    /// Deterministic basis of the radical `V^⊥`.
    #[must_use]
    pub fn radical(&self) -> Vec<BitVec> {
        self.symplectic_basis().z.clone()
    }

    #[must_use]
    pub fn is_in_radical(&self, v: &BitVec) -> bool {
        self.functional(v).is_zero()
    }

    #[must_use]
    pub fn is_nondegenerate(&self) -> bool {
        self.space_type().k == 0
    }

    /// The type `(n, k)` from the rank of the Gram matrix.
    pub fn try_space_type(&self) -> Result<SpaceType, SymplecticError> {
        let r = self.gram.rank();
        if r % 2 == 1 {
            return Err(SymplecticError::OddRank(r));
        }
        Ok(SpaceType::new(r / 2, self.dim() - r))
    }

    #[must_use]
    pub fn space_type(&self) -> SpaceType {
        self.try_space_type()
            .expect("validated alternating forms have even rank")
    }

    /// Symplectic basis by symplectic Gram–Schmidt.
    ///
    /// Candidates start as the standard basis. The lowest-index candidate with a
    /// non-orthogonal partner is paired with its lowest-index partner, and the
    /// remaining candidates are projected onto the complement of that plane.
    /// The radical part is the kernel basis of the Gram matrix.
    #[must_use]
    pub fn symplectic_basis(&self) -> &SymplecticBasis {
        self.basis.get_or_init(|| {
            let d = self.dim();
            let mut cands: Vec<BitVec> = (0..d).map(|i| BitVec::unit(d, i)).collect();
            let (mut xs, mut ys) = (Vec::new(), Vec::new());
            loop {
                let hit = cands.iter().enumerate().find_map(|(i, c)| {
                    let f = self.functional(c);
                    cands
                        .iter()
                        .enumerate()
                        .find(|(_, w)| f.dot(w))
                        .map(|(j, _)| (i, j))
                });
                let Some((i, j)) = hit else { break };
                let (x, y) = (cands[i].clone(), cands[j].clone());
                let (fx, fy) = (self.functional(&x), self.functional(&y));
                let (hi, lo) = (i.max(j), i.min(j));
                cands.remove(hi);
                cands.remove(lo);
                for c in &mut cands {
                    let (cy, cx) = (fy.dot(c), fx.dot(c));
                    if cy {
                        c.xor_assign(&x);
                    }
                    if cx {
                        c.xor_assign(&y);
                    }
                }
                xs.push(x);
                ys.push(y);
            }
            SymplecticBasis {
                x: xs,
                y: ys,
                z: self.gram.kernel_basis(),
            }
        })
    }

    /// The Gram matrix of the subspace spanned by the columns of `basis`.
    pub fn restricted_gram(&self, basis: &BitMat) -> Result<BitMat, SymplecticError> {
        Ok(self.gram.congruence(basis)?)
    }
}

/// Degenerate orthogonal projection of `v` onto `W = span(wbasis)`.
///
/// Returns `(v0, v_W)` with `v = v0 + v_W`, `v_W ∈ W` and `v0 ⊥ W`. Requires
/// `v` to be orthogonal to the radical of `W`.
pub fn orthogonal_project(
    space: &SympSpace,
    wbasis: &[BitVec],
    v: &BitVec,
) -> Result<(BitVec, BitVec), SymplecticError> {
    let d = space.dim();
    if v.dim() != d {
        return Err(Gf2Error::DimensionMismatch {
            expected: d,
            found: v.dim(),
        }
        .into());
    }
    if let Some(bad) = wbasis.iter().find(|w| w.dim() != d) {
        return Err(Gf2Error::DimensionMismatch {
            expected: d,
            found: bad.dim(),
        }
        .into());
    }
    let basis = span_basis(d, wbasis);
    let embed = BitMat::from_cols(d, &basis)?;
    let sub = SympSpace::new(space.restricted_gram(&embed)?)?;
    let lift = |c: &BitVec| embed.mul_vec(c).expect("coordinates match the subspace basis");
    let sb = sub.symplectic_basis();
    for z in &sb.z {
        if space.pair(v, &lift(z)) {
            return Err(SymplecticError::NotOrthogonalToRadical { vector: v.clone() });
        }
    }
    let mut vw = BitVec::zeros(d);
    for (x, y) in sb.x.iter().zip(&sb.y) {
        let (x, y) = (lift(x), lift(y));
        if space.pair(v, &y) {
            vw.xor_assign(&x);
        }
        if space.pair(v, &x) {
            vw.xor_assign(&y);
        }
    }
    Ok((v + &vw, vw))
}

// ============================================================================
// Mixed completion
// ============================================================================

/// A nondegenerate form `⟨⟨v,w⟩⟩ = ⟨v,w⟩ + (π v, π w)` on a degenerate space.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MixedForm {
    pub base: SympSpace,
    /// The projection `π : W → W^⊥` as a `dim × dim` matrix.
    pub proj: BitMat,
    /// The symmetric form `(,)` on `W^⊥` in the basis [`SympSpace::radical`].
    pub radform: BitMat,
    completed: BitMat,
}

impl MixedForm {
    /// Matrix of the completed form.
    #[must_use]
    pub fn matrix(&self) -> &BitMat {
        &self.completed
    }

    #[must_use]
    pub fn eval(&self, v: &BitVec, w: &BitVec) -> bool {
        self.completed.bilinear(v, w).expect("vectors must live in the base space")
    }

    /// The unique `w` with `⟨⟨w, ·⟩⟩ = form`.
    pub fn represent(&self, form: &BitVec) -> Result<BitVec, SymplecticError> {
        self.completed
            .transpose()
            .solve(form)?
            .ok_or(SymplecticError::Linear(Gf2Error::Singular))
    }

    /// `π(v)`.
    #[must_use]
    pub fn project(&self, v: &BitVec) -> BitVec {
        self.proj.mul_vec(v).expect("vector must live in the base space")
    }
}

/// Builds the mixed completion from a projection onto the radical and a
/// nondegenerate symmetric form on the radical.
pub fn mixed_completion(
    space: &SympSpace,
    proj: &BitMat,
    radform: &BitMat,
) -> Result<MixedForm, SymplecticError> {
    let d = space.dim();
    let radical = space.radical();
    let k = radical.len();
    if proj.rows() != d || proj.cols() != d {
        return Err(SymplecticError::InvalidCompletion("projection has the wrong shape"));
    }
    if radform.rows() != k || radform.cols() != k {
        return Err(SymplecticError::InvalidCompletion("radical form has the wrong shape"));
    }
    if !radform.is_symmetric() || radform.rank() != k {
        return Err(SymplecticError::InvalidCompletion(
            "radical form must be symmetric and nondegenerate",
        ));
    }
    if !space.gram().mul(proj)?.is_zero() {
        return Err(SymplecticError::InvalidCompletion("projection leaves the radical"));
    }
    for z in &radical {
        if proj.mul_vec(z)? != *z {
            return Err(SymplecticError::InvalidCompletion("projection does not fix the radical"));
        }
    }
    // With image inside the radical and the radical fixed, π is idempotent onto it.
    let rad_mat = BitMat::from_cols(d, &radical)?;
    let mut coords = BitMat::zeros(k, d);
    for j in 0..d {
        let image = proj.col(j);
        let c = rad_mat
            .solve(&image)?
            .expect("image of the projection lies in the radical");
        for i in c.ones() {
            coords.set(i, j, true);
        }
    }
    let completed = space.gram().add(&radform.congruence(&coords)?);
    if completed.rank() != d {
        return Err(SymplecticError::InvalidCompletion("completed form is degenerate"));
    }
    Ok(MixedForm {
        base: space.clone(),
        proj: proj.clone(),
        radform: radform.clone(),
        completed,
    })
}

/// Canonical choices: `π` kills every hyperbolic plane of the symplectic basis
/// and fixes the radical; `(,)` is the identity in the radical basis.
#[must_use]
pub fn default_completion_choices(space: &SympSpace) -> (BitMat, BitMat) {
    let d = space.dim();
    let sb = space.symplectic_basis();
    let k = sb.z.len();
    let basis = sb.matrix(d);
    let inv = basis.inverse().expect("symplectic basis is a basis");
    let mut keep = BitMat::zeros(d, d);
    for i in (d - k)..d {
        keep.set(i, i, true);
    }
    let proj = basis
        .mul(&keep)
        .and_then(|m| m.mul(&inv))
        .expect("square matrices of equal size");
    (proj, BitMat::identity(k))
}

/// Uniformly random valid completion choices, for cross-checking that results
/// do not depend on the choice.
pub fn random_completion_choices<R: Rng + ?Sized>(space: &SympSpace, rng: &mut R) -> (BitMat, BitMat) {
    let d = space.dim();
    let radical = space.radical();
    let k = radical.len();
    let (p0, _) = default_completion_choices(space);
    // π = π₀ + R·C·(I − π₀) for random C keeps the radical fixed and the image inside it.
    let rad_mat = BitMat::from_cols(d, &radical).expect("radical vectors live in the space");
    let mut c = BitMat::zeros(k, d);
    for i in 0..k {
        for j in 0..d {
            c.set(i, j, rng.gen());
        }
    }
    let complement = BitMat::identity(d).add(&p0);
    let shift = rad_mat
        .mul(&c)
        .and_then(|m| m.mul(&complement))
        .expect("shapes agree");
    let proj = p0.add(&shift);
    let radform = loop {
        let mut b = BitMat::zeros(k, k);
        for i in 0..k {
            for j in i..k {
                let bit = rng.gen();
                b.set(i, j, bit);
                b.set(j, i, bit);
            }
        }
        if b.rank() == k {
            break b;
        }
    };
    (proj, radform)
}
