//! Central extensions `ℤ₂ → G → V` presented by a bilinear cocycle `β` with
//! `β + βᵀ` equal to the Gram matrix of `V`.

use std::fmt;

use thiserror::Error;

use crate::gf2::{span_rank, BitMat, BitVec, Gf2Error};
use crate::graph::Graph;
use crate::srs::Srs;
use crate::symplectic::SympSpace;

/// Largest `dim V` for which group elements are enumerated.
pub const MAX_ENUMERATION_DIM: usize = 24;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GroupError {
    #[error("cocycle has shape {rows}x{cols}, space has dimension {dim}")]
    Shape { rows: usize, cols: usize, dim: usize },
    #[error("cocycle does not polarize to the symplectic form")]
    NotPolarizing,
    #[error("element does not belong to this group")]
    Mismatch,
    #[error("enumeration needs dim V <= {cap}, found {dim}")]
    TooLarge { cap: usize, dim: usize },
    #[error(transparent)]
    Linear(#[from] Gf2Error),
}

/// `(v, a)` with `v ∈ V` and central coordinate `a ∈ F₂`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GroupElement {
    pub vec: BitVec,
    pub sign: bool,
}

impl GroupElement {
    #[must_use]
    pub fn new(vec: BitVec, sign: bool) -> Self {
        Self { vec, sign }
    }
}

impl fmt::Display for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.vec, u8::from(self.sign))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExtraspecialSign {
    Plus,
    Minus,
    NotApplicable,
}

impl ExtraspecialSign {
    #[must_use]
    pub fn as_str(self) -> &'static str {
        match self {
            Self::Plus => "plus",
            Self::Minus => "minus",
            Self::NotApplicable => "not_applicable",
        }
    }
}

/// The group `V × F₂` with `(v,a)(w,b) = (v+w, a+b+β(v,w))`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CocycleGroup {
    space: SympSpace,
    beta: BitMat,
}

impl CocycleGroup {
    pub fn new(space: SympSpace, beta: BitMat) -> Result<Self, GroupError> {
        let d = space.dim();
        if beta.rows() != d || beta.cols() != d {
            return Err(GroupError::Shape {
                rows: beta.rows(),
                cols: beta.cols(),
                dim: d,
            });
        }
        if beta.add(&beta.transpose()) != *space.gram() {
            return Err(GroupError::NotPolarizing);
        }
        Ok(Self { space, beta })
    }

    #[must_use]
    pub fn space(&self) -> &SympSpace {
        &self.space
    }

    #[must_use]
    pub fn beta(&self) -> &BitMat {
        &self.beta
    }

    /// `log₂ |G| = dim V + 1`.
    #[must_use]
    pub fn order_log2(&self) -> usize {
        self.space.dim() + 1
    }

    /// Same space, cocycle `β + s` for a symmetric `s`.
    pub fn perturbed(&self, s: &BitMat) -> Result<Self, GroupError> {
        Self::new(self.space.clone(), self.beta.add(s))
    }

    fn check(&self, g: &GroupElement) -> Result<(), GroupError> {
        if g.vec.dim() != self.space.dim() {
            return Err(GroupError::Mismatch);
        }
        Ok(())
    }

    fn b(&self, v: &BitVec, w: &BitVec) -> bool {
        self.beta.bilinear(v, w).expect("checked dimensions")
    }

    /// `q(v) = β(v, v)`; `(v,a)² = (0, q(v))`.
    #[must_use]
    pub fn quadratic(&self, v: &BitVec) -> bool {
        self.b(v, v)
    }

    #[must_use]
    pub fn identity(&self) -> GroupElement {
        GroupElement::new(BitVec::zeros(self.space.dim()), false)
    }

    /// The central involution `(0, 1)`.
    #[must_use]
    pub fn central(&self) -> GroupElement {
        GroupElement::new(BitVec::zeros(self.space.dim()), true)
    }

    pub fn multiply(&self, g: &GroupElement, h: &GroupElement) -> Result<GroupElement, GroupError> {
        self.check(g)?;
        self.check(h)?;
        Ok(GroupElement::new(
            &g.vec + &h.vec,
            g.sign ^ h.sign ^ self.b(&g.vec, &h.vec),
        ))
    }

    pub fn inverse(&self, g: &GroupElement) -> Result<GroupElement, GroupError> {
        self.check(g)?;
        Ok(GroupElement::new(g.vec.clone(), g.sign ^ self.quadratic(&g.vec)))
    }

    /// `g h g⁻¹ h⁻¹`, computed from the group law.
    pub fn commutator(&self, g: &GroupElement, h: &GroupElement) -> Result<GroupElement, GroupError> {
        let gh = self.multiply(g, h)?;
        let ghg = self.multiply(&gh, &self.inverse(g)?)?;
        self.multiply(&ghg, &self.inverse(h)?)
    }

    /// Order of `g`: 1, 2 or 4.
    pub fn element_order(&self, g: &GroupElement) -> Result<usize, GroupError> {
        self.check(g)?;
        let id = self.identity();
        let mut power = g.clone();
        let mut order = 1;
        while power != id {
            power = self.multiply(&power, g)?;
            order += 1;
        }
        Ok(order)
    }

    /// Every element, `vec` in counting order, sign 0 before 1.
    pub fn elements(&self) -> Result<Vec<GroupElement>, GroupError> {
        let d = self.space.dim();
        if d > MAX_ENUMERATION_DIM {
            return Err(GroupError::TooLarge {
                cap: MAX_ENUMERATION_DIM,
                dim: d,
            });
        }
        Ok((0..(1u64 << d))
            .flat_map(|m| {
                let v = BitVec::from_mask(d, m);
                [GroupElement::new(v.clone(), false), GroupElement::new(v, true)]
            })
            .collect())
    }

    /// `Z(G)` by testing every element against every other.
    pub fn center(&self) -> Result<Vec<GroupElement>, GroupError> {
        let all = self.elements()?;
        let mut out = Vec::new();
        for g in &all {
            let mut central = true;
            for h in &all {
                if self.multiply(g, h)? != self.multiply(h, g)? {
                    central = false;
                    break;
                }
            }
            if central {
                out.push(g.clone());
            }
        }
        Ok(out)
    }

    /// `#{v : q(v) = 1}`.
    pub fn quadratic_weight(&self) -> Result<usize, GroupError> {
        let d = self.space.dim();
        if d > MAX_ENUMERATION_DIM {
            return Err(GroupError::TooLarge {
                cap: MAX_ENUMERATION_DIM,
                dim: d,
            });
        }
        Ok((0..(1u64 << d))
            .filter(|&m| self.quadratic(&BitVec::from_mask(d, m)))
            .count())
    }
}

/// The group with the canonical cocycle: in the symplectic basis
/// `x₁, y₁, …, z` it is the strict upper triangle of the Gram matrix, i.e.
/// `β(xᵢ, yᵢ) = 1` and zero otherwise.
#[must_use]
pub fn make_group(space: &SympSpace) -> CocycleGroup {
    let d = space.dim();
    let basis = space.symplectic_basis().matrix(d);
    let inv = basis.inverse().expect("symplectic basis is a basis");
    let mut upper = BitMat::zeros(d, d);
    for i in 0..space.symplectic_basis().x.len() {
        upper.set(2 * i, 2 * i + 1, true);
    }
    let beta = upper
        .congruence(&inv)
        .expect("square matrices of equal size");
    CocycleGroup::new(space.clone(), beta).expect("canonical cocycle polarizes the form")
}

/// Lifts `(f(p), 0)` of the decorations.
pub fn lift_decoration(s: &Srs, grp: &CocycleGroup) -> Result<Vec<GroupElement>, GroupError> {
    if s.space() != grp.space() {
        return Err(GroupError::Mismatch);
    }
    Ok(s
        .decorations()
        .iter()
        .map(|f| GroupElement::new(f.clone(), false))
        .collect())
}

/// Elements joined when they do not commute.
pub fn commutativity_graph(grp: &CocycleGroup, elems: &[GroupElement]) -> Result<Graph, GroupError> {
    let mut edges = Vec::new();
    for i in 0..elems.len() {
        for j in (i + 1)..elems.len() {
            if grp.commutator(&elems[i], &elems[j])? != grp.identity() {
                edges.push((i, j));
            }
        }
    }
    Ok(Graph::with_edges(elems.len(), &edges).expect("pairs are distinct and in range"))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BurnsideReport {
    /// The elements generate `G`.
    pub generates: bool,
    /// They generate and none is redundant.
    pub minimal: bool,
    /// Dimension of their span in `G/Φ(G)`.
    pub basis_size: usize,
    /// `dim G/Φ(G)`: size of every minimal generating set.
    pub frattini_dim: usize,
}

/// Decides generation through the Frattini quotient. `Φ(G) = G²[G,G]` is the
/// centre line unless `G` is elementary abelian, in which case `Φ(G) = 1` and
/// the sign is a coordinate of its own.
pub fn burnside_check(grp: &CocycleGroup, gens: &[GroupElement]) -> Result<BurnsideReport, GroupError> {
    for g in gens {
        grp.check(g)?;
    }
    let d = grp.space.dim();
    let squares = (0..d).any(|i| grp.quadratic(&BitVec::unit(d, i)));
    let frattini_trivial = grp.space.gram().is_zero() && !squares;
    let images: Vec<BitVec> = if frattini_trivial {
        gens.iter()
            .map(|g| g.vec.concat(&BitVec::from_bools(&[g.sign])))
            .collect()
    } else {
        gens.iter().map(|g| g.vec.clone()).collect()
    };
    let frattini_dim = if frattini_trivial { d + 1 } else { d };
    let basis_size = span_rank(&images);
    let generates = basis_size == frattini_dim;
    Ok(BurnsideReport {
        generates,
        minimal: generates && gens.len() == frattini_dim,
        basis_size,
        frattini_dim,
    })
}

/// `±` type of an extraspecial group from the number of `v` with `q(v) = 1`:
/// `2^{2n−1} − 2^{n−1}` for plus and `2^{2n−1} + 2^{n−1}` for minus.
pub fn extraspecial_sign(grp: &CocycleGroup) -> Result<ExtraspecialSign, GroupError> {
    let ty = grp.space.space_type();
    if ty.k != 0 || ty.n == 0 {
        return Ok(ExtraspecialSign::NotApplicable);
    }
    let n = ty.n as u32;
    let weight = grp.quadratic_weight()?;
    let plus = (1usize << (2 * n - 1)) - (1usize << (n - 1));
    Ok(if weight == plus {
        ExtraspecialSign::Plus
    } else {
        ExtraspecialSign::Minus
    })
}
