//! One- and two-node extensions of minimal symplectic root systems.
//!
//! The existing space keeps its coordinates; new coordinates are appended at
//! the end. A new node `p` gets index `N` (after the `N` existing nodes).

use serde_json::{json, Value};
use thiserror::Error;

use crate::gf2::{BitMat, BitVec, Gf2Error};
use crate::graph::Graph;
use crate::srs::{validate_srs, Srs, SrsError};
use crate::symplectic::{default_completion_choices, mixed_completion, SympSpace, SymplecticError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ExtendError {
    #[error("extension requires a minimal symplectic root system")]
    NotMinimal,
    #[error("extension requires an extraspecial space, found nullity {0}")]
    NotExtraspecial(usize),
    #[error("extension requires a pure nullspace")]
    NotNullspace,
    #[error("indicator has {found} entries, graph has {expected} nodes")]
    IndicatorLength { expected: usize, found: usize },
    #[error("node order is not a permutation of the graph's nodes")]
    BadOrder,
    #[error("witness does not reproduce the extension: {0}")]
    WitnessMismatch(&'static str),
    #[error(transparent)]
    Srs(#[from] SrsError),
    #[error(transparent)]
    Symplectic(#[from] SymplecticError),
    #[error(transparent)]
    Linear(#[from] Gf2Error),
}

/// Neighbourhood of a node about to be attached: `λ(q) = 1` iff the new node
/// is adjacent to `q`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct NeighborhoodIndicator {
    pub lambda: BitVec,
}

impl NeighborhoodIndicator {
    #[must_use]
    pub fn new(lambda: BitVec) -> Self {
        Self { lambda }
    }

    #[must_use]
    pub fn from_neighbors(nodes: usize, neighbors: &[usize]) -> Self {
        Self::new(BitVec::from_ones(nodes, neighbors.iter().copied()))
    }

    #[must_use]
    pub fn len(&self) -> usize {
        self.lambda.dim()
    }

    #[must_use]
    pub fn is_empty(&self) -> bool {
        self.lambda.dim() == 0
    }

    fn check(&self, s: &Srs) -> Result<(), ExtendError> {
        if self.lambda.dim() != s.node_count() {
            return Err(ExtendError::IndicatorLength {
                expected: s.node_count(),
                found: self.lambda.dim(),
            });
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExtensionCase {
    /// Type `(n, k+1)`: a new radical vector `z`, `f(p) = w₀ + z`.
    NewNullvector,
    /// Type `(n+1, k−1)`: a new `y` pairing with a former radical vector `x`,
    /// `f(p) = w₀ + y`.
    NewHyperbolic,
}

impl ExtensionCase {
    #[must_use]
    pub fn as_str(self) -> &'static str {
        match self {
            Self::NewNullvector => "new_nullvector",
            Self::NewHyperbolic => "new_hyperbolic",
        }
    }
}

/// The decision trail of a single extension.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExtensionWitness {
    pub case: ExtensionCase,
    /// `w₀ ∈ ker(π)` in the coordinates of the old space.
    pub w0: BitVec,
    /// Radical part `z₀ = π(w̃₀)` of the solution; zero in the nullvector case.
    pub z0: BitVec,
    /// `f(p)` in the coordinates of the new space.
    pub new_deco: BitVec,
    /// Radical vector `x` with `⟨x, y⟩ = 1` in the hyperbolic case.
    pub x_choice: Option<BitVec>,
}

impl ExtensionWitness {
    pub fn to_json_value(&self) -> Value {
        json!({
            "case": self.case.as_str(),
            "w0": self.w0.to_string(),
            "z0": self.z0.to_string(),
            "new_deco": self.new_deco.to_string(),
            "x_choice": self.x_choice.as_ref().map(ToString::to_string),
        })
    }

    /// Rebuilds the extension of `s` by `lambda` from the recorded `w₀` and
    /// case alone.
    pub fn replay(&self, s: &Srs, lambda: &NeighborhoodIndicator) -> Result<Srs, ExtendError> {
        let c = lift_indicator(s, lambda)?;
        match self.case {
            ExtensionCase::NewNullvector => assemble_nullvector(s, lambda, &self.w0),
            ExtensionCase::NewHyperbolic => {
                // μ(w) = λ̃(w) + ⟨w₀, w⟩ is what y has to pair with.
                let mu = &c + &s.space().functional(&self.w0);
                let x = self
                    .x_choice
                    .as_ref()
                    .ok_or(ExtendError::WitnessMismatch("hyperbolic case without x"))?;
                if !s.space().is_in_radical(x) || !mu.dot(x) {
                    return Err(ExtendError::WitnessMismatch("x does not pair with y"));
                }
                assemble_hyperbolic(s, lambda, &self.w0, &mu)
            }
        }
    }
}

/// Coefficients `c` of the unique form `λ̃` with `λ̃(f(q)) = λ(q)`.
pub fn lift_indicator(s: &Srs, lambda: &NeighborhoodIndicator) -> Result<BitVec, ExtendError> {
    if !s.is_minimal() {
        return Err(ExtendError::NotMinimal);
    }
    lambda.check(s)?;
    let c = s
        .decoration_matrix()
        .transpose()
        .solve(&lambda.lambda)?
        .expect("decorations of a minimal root system form a basis");
    Ok(c)
}

fn extended_graph(s: &Srs, lambda: &NeighborhoodIndicator) -> Graph {
    s.graph().with_new_node(&lambda.lambda)
}

fn widened(s: &Srs, extra: usize) -> Vec<BitVec> {
    let d = s.space().dim();
    s.decorations().iter().map(|f| f.resized(d + extra)).collect()
}

fn assemble_nullvector(s: &Srs, lambda: &NeighborhoodIndicator, w0: &BitVec) -> Result<Srs, ExtendError> {
    let d = s.space().dim();
    let mut gram = BitMat::zeros(d + 1, d + 1);
    for i in 0..d {
        for j in s.space().gram().row(i).ones() {
            gram.set(i, j, true);
        }
    }
    let mut deco = widened(s, 1);
    let mut fp = w0.resized(d + 1);
    fp.set(d, true);
    deco.push(fp);
    Ok(validate_srs(extended_graph(s, lambda), SympSpace::new(gram)?, deco)?)
}

fn assemble_hyperbolic(
    s: &Srs,
    lambda: &NeighborhoodIndicator,
    w0: &BitVec,
    mu: &BitVec,
) -> Result<Srs, ExtendError> {
    let d = s.space().dim();
    let mut gram = BitMat::zeros(d + 1, d + 1);
    for i in 0..d {
        for j in s.space().gram().row(i).ones() {
            gram.set(i, j, true);
        }
        if mu.get(i) {
            gram.set(i, d, true);
            gram.set(d, i, true);
        }
    }
    let mut deco = widened(s, 1);
    let mut fp = w0.resized(d + 1);
    fp.set(d, true);
    deco.push(fp);
    Ok(validate_srs(extended_graph(s, lambda), SympSpace::new(gram)?, deco)?)
}

fn nullvector_witness(result: &Srs, w0: BitVec) -> ExtensionWitness {
    let d = w0.dim();
    ExtensionWitness {
        case: ExtensionCase::NewNullvector,
        w0,
        z0: BitVec::zeros(d),
        new_deco: result.decoration(result.node_count() - 1).clone(),
        x_choice: None,
    }
}

/// Extension of an extraspecial minimal root system: `f(p) = w₀ + z` with
/// `⟨w₀, ·⟩ = λ̃`.
pub fn extend_extraspecial(
    s: &Srs,
    lambda: &NeighborhoodIndicator,
) -> Result<(Srs, ExtensionWitness), ExtendError> {
    let c = lift_indicator(s, lambda)?;
    let k = s.space_type().k;
    if k != 0 {
        return Err(ExtendError::NotExtraspecial(k));
    }
    let w0 = s
        .space()
        .gram()
        .solve(&c)?
        .expect("nondegenerate Gram matrix is invertible");
    let result = assemble_nullvector(s, lambda, &w0)?;
    let witness = nullvector_witness(&result, w0);
    Ok((result, witness))
}

/// Extension of a minimal root system on a totally disconnected graph.
pub fn extend_nullspace(
    s: &Srs,
    lambda: &NeighborhoodIndicator,
) -> Result<(Srs, ExtensionWitness), ExtendError> {
    let c = lift_indicator(s, lambda)?;
    if !s.space().gram().is_zero() {
        return Err(ExtendError::NotNullspace);
    }
    let d = s.space().dim();
    let zero = BitVec::zeros(d);
    match c.lowest_one() {
        None => {
            let result = assemble_nullvector(s, lambda, &zero)?;
            let witness = nullvector_witness(&result, zero);
            Ok((result, witness))
        }
        Some(i) => {
            let result = assemble_hyperbolic(s, lambda, &zero, &c)?;
            let witness = ExtensionWitness {
                case: ExtensionCase::NewHyperbolic,
                w0: zero,
                z0: c.clone(),
                new_deco: result.decoration(result.node_count() - 1).clone(),
                x_choice: Some(BitVec::unit(d, i)),
            };
            Ok((result, witness))
        }
    }
}

/// The unique minimal extension of a minimal root system, built through a
/// mixed completion. `choices` is `(π, (,))` as accepted by
/// [`mixed_completion`]; the canonical choice is used when absent.
pub fn extend_minimal(
    s: &Srs,
    lambda: &NeighborhoodIndicator,
    choices: Option<(&BitMat, &BitMat)>,
) -> Result<(Srs, ExtensionWitness), ExtendError> {
    let c = lift_indicator(s, lambda)?;
    let space = s.space();
    let defaults;
    let (proj, radform) = match choices {
        Some(pair) => pair,
        None => {
            defaults = default_completion_choices(space);
            (&defaults.0, &defaults.1)
        }
    };
    let mixed = mixed_completion(space, proj, radform)?;
    let w_tilde = mixed.represent(&c)?;
    let z0 = mixed.project(&w_tilde);
    let w0 = &w_tilde + &z0;
    if z0.is_zero() {
        let result = assemble_nullvector(s, lambda, &w0)?;
        let witness = nullvector_witness(&result, w0);
        return Ok((result, witness));
    }
    let mu = mixed.matrix().mul_vec(&z0)?;
    let x = space
        .radical()
        .into_iter()
        .find(|z| mu.dot(z))
        .expect("a nonzero radical vector pairs nontrivially under a nondegenerate radical form");
    let result = assemble_hyperbolic(s, lambda, &w0, &mu)?;
    let witness = ExtensionWitness {
        case: ExtensionCase::NewHyperbolic,
        w0,
        z0,
        new_deco: result.decoration(result.node_count() - 1).clone(),
        x_choice: Some(x),
    };
    Ok((result, witness))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DoubleCase {
    /// Type `(n, 2)`: `f(p) = w_p + z_p`, `f(q) = w_q + z_q`.
    TwoNullvectors,
    /// Type `(n+1, 0)`: `f(p) = w_p + x`, `f(q) = w_q + y`, `⟨x, y⟩ = 1`.
    Extraspecial,
}

#[derive(Debug, Clone)]
pub struct DoubleExtension {
    pub srs: Srs,
    pub case: DoubleCase,
    /// Single extension by `p` alone.
    pub witness_p: ExtensionWitness,
    /// Single extension by `q` alone.
    pub witness_q: ExtensionWitness,
}

/// Attaches `p` (index `N`) and `q` (index `N+1`) to an extraspecial minimal
/// root system at once.
pub fn double_extend_extraspecial(
    s: &Srs,
    lambda_p: &NeighborhoodIndicator,
    lambda_q: &NeighborhoodIndicator,
    pq_edge: bool,
) -> Result<DoubleExtension, ExtendError> {
    let (_, witness_p) = extend_extraspecial(s, lambda_p)?;
    let (_, witness_q) = extend_extraspecial(s, lambda_q)?;
    let (wp, wq) = (&witness_p.w0, &witness_q.w0);
    let orthogonal = !s.space().pair(wp, wq);
    let case = if orthogonal == pq_edge {
        DoubleCase::Extraspecial
    } else {
        DoubleCase::TwoNullvectors
    };
    let d = s.space().dim();
    let mut gram = BitMat::zeros(d + 2, d + 2);
    for i in 0..d {
        for j in s.space().gram().row(i).ones() {
            gram.set(i, j, true);
        }
    }
    if case == DoubleCase::Extraspecial {
        gram.set(d, d + 1, true);
        gram.set(d + 1, d, true);
    }
    let mut deco = widened(s, 2);
    let mut fp = wp.resized(d + 2);
    fp.set(d, true);
    let mut fq = wq.resized(d + 2);
    fq.set(d + 1, true);
    deco.push(fp);
    deco.push(fq);
    let mut q_nbrs = lambda_q.lambda.resized(s.node_count() + 1);
    q_nbrs.set(s.node_count(), pq_edge);
    let graph = s.graph().with_new_node(&lambda_p.lambda).with_new_node(&q_nbrs);
    let srs = validate_srs(graph, SympSpace::new(gram)?, deco)?;
    Ok(DoubleExtension {
        srs,
        case,
        witness_p,
        witness_q,
    })
}

/// Minimal root system of `g` obtained by attaching the nodes one at a time in
/// `order`, starting from the zero-dimensional root system. The result is
/// expressed on `g`'s own node numbering, together with the witness of each
/// step.
pub fn build_by_extension_traced(
    g: &Graph,
    order: &[usize],
) -> Result<(Srs, Vec<ExtensionWitness>), ExtendError> {
    let n = g.node_count();
    let mut seen = vec![false; n];
    if order.len() != n || order.iter().any(|&p| p >= n || std::mem::replace(&mut seen[p], true)) {
        return Err(ExtendError::BadOrder);
    }
    let mut s = Srs::empty();
    let mut witnesses = Vec::with_capacity(n);
    for (i, &p) in order.iter().enumerate() {
        let lambda = NeighborhoodIndicator::new(BitVec::from_bools(
            &order[..i].iter().map(|&q| g.has_edge(p, q)).collect::<Vec<_>>(),
        ));
        let (next, witness) = extend_minimal(&s, &lambda, None)?;
        s = next;
        witnesses.push(witness);
    }
    let mut inverse = vec![0; n];
    for (i, &p) in order.iter().enumerate() {
        inverse[p] = i;
    }
    let s = s.relabeled(&inverse)?;
    let s = validate_srs(g.clone(), s.space().clone(), s.decorations().to_vec())?;
    Ok((s, witnesses))
}

pub fn build_by_extension(g: &Graph, order: &[usize]) -> Result<Srs, ExtendError> {
    build_by_extension_traced(g, order).map(|(s, _)| s)
}
