//! Symplectic root systems: node decorations into a symplectic F₂-space that
//! span the space and pair to 1 exactly on edges.
//!
//! Everything here compares root systems over a *fixed* node set. Graph
//! automorphisms act separately, see
//! [`crate::cartan::automorphism_action_on_quotients`].

use serde_json::{json, Map, Value};
use thiserror::Error;

use crate::gf2::{span_basis, span_rank, BitMat, BitVec, Gf2Error};
use crate::graph::{Graph, GraphError};
use crate::symplectic::{SpaceType, SympSpace, SymplecticError};

/// Largest radical dimension accepted by [`enumerate_quotients`].
pub const MAX_QUOTIENT_RADICAL: usize = 12;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SrsError {
    #[error("expected {expected} decorations, found {found}")]
    DecorationCount { expected: usize, found: usize },
    #[error("decoration of node {node} has dimension {found}, space has {expected}")]
    DecorationDim {
        node: usize,
        expected: usize,
        found: usize,
    },
    #[error("decorations span a {rank}-dimensional subspace of a {dim}-dimensional space")]
    SpanFailure { rank: usize, dim: usize },
    #[error("nodes {p} and {q}: {}", if *edge { "adjacent but decorations are orthogonal" } else { "not adjacent but decorations pair to 1" })]
    PairingMismatch { p: usize, q: usize, edge: bool },
    #[error("operation requires a minimal symplectic root system")]
    NotMinimal,
    #[error("vector {0} is not in the radical")]
    NotInRadical(BitVec),
    #[error("root systems live on different graphs")]
    GraphMismatch,
    #[error("linear map does not preserve the symplectic form")]
    NotSymplectic,
    #[error("map has shape {rows}x{cols}, expected {expected_rows}x{expected_cols}")]
    MapShape {
        rows: usize,
        cols: usize,
        expected_rows: usize,
        expected_cols: usize,
    },
    #[error("radical dimension {k} exceeds the enumeration cap {cap}")]
    RadicalTooLarge { k: usize, cap: usize },
    #[error("invalid root system JSON: {0}")]
    Json(String),
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Symplectic(#[from] SymplecticError),
    #[error(transparent)]
    Linear(#[from] Gf2Error),
}

/// A linear map between symplectic spaces preserving the form.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SympMap {
    pub matrix: BitMat,
    pub src: SympSpace,
    pub dst: SympSpace,
}

impl SympMap {
    /// Checks the shape and `⟨v,w⟩_src = ⟨Mv,Mw⟩_dst` on the standard basis.
    pub fn new(matrix: BitMat, src: SympSpace, dst: SympSpace) -> Result<Self, SrsError> {
        if matrix.rows() != dst.dim() || matrix.cols() != src.dim() {
            return Err(SrsError::MapShape {
                rows: matrix.rows(),
                cols: matrix.cols(),
                expected_rows: dst.dim(),
                expected_cols: src.dim(),
            });
        }
        if dst.gram().congruence(&matrix)? != *src.gram() {
            return Err(SrsError::NotSymplectic);
        }
        Ok(Self { matrix, src, dst })
    }

    #[must_use]
    pub fn apply(&self, v: &BitVec) -> BitVec {
        self.matrix.mul_vec(v).expect("vector lives in the source space")
    }

    #[must_use]
    pub fn is_surjective(&self) -> bool {
        self.matrix.rank() == self.dst.dim()
    }

    #[must_use]
    pub fn is_bijective(&self) -> bool {
        self.src.dim() == self.dst.dim() && self.is_surjective()
    }

    /// Kernel basis; always inside the radical of the source.
    #[must_use]
    pub fn kernel(&self) -> Vec<BitVec> {
        self.matrix.kernel_basis()
    }
}

/// A symplectic root system `(f, V)` on a graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Srs {
    graph: Graph,
    space: SympSpace,
    deco: Vec<BitVec>,
}

/// Checks the defining conditions and builds the root system. Reports the
/// first violated condition: the span, then node pairs in lexicographic order.
pub fn validate_srs(graph: Graph, space: SympSpace, deco: Vec<BitVec>) -> Result<Srs, SrsError> {
    let n = graph.node_count();
    let d = space.dim();
    if deco.len() != n {
        return Err(SrsError::DecorationCount {
            expected: n,
            found: deco.len(),
        });
    }
    for (node, f) in deco.iter().enumerate() {
        if f.dim() != d {
            return Err(SrsError::DecorationDim {
                node,
                expected: d,
                found: f.dim(),
            });
        }
    }
    let rank = span_rank(&deco);
    if rank != d {
        return Err(SrsError::SpanFailure { rank, dim: d });
    }
    let functionals: Vec<BitVec> = deco.iter().map(|f| space.functional(f)).collect();
    for (p, fp) in functionals.iter().enumerate() {
        for (q, fq) in deco.iter().enumerate().skip(p + 1) {
            let edge = graph.has_edge(p, q);
            if fp.dot(fq) != edge {
                return Err(SrsError::PairingMismatch { p, q, edge });
            }
        }
    }
    Ok(Srs { graph, space, deco })
}

impl Srs {
    /// The minimal root system: `V = F₂^N`, Gram = adjacency, `f(p) = e_p`.
    #[must_use]
    pub fn minimal(graph: &Graph) -> Self {
        let n = graph.node_count();
        let space = SympSpace::new(graph.adjacency().clone()).expect("adjacency of a simple graph is alternating");
        let deco = (0..n).map(|p| BitVec::unit(n, p)).collect();
        Self {
            graph: graph.clone(),
            space,
            deco,
        }
    }

    /// The root system on the empty graph in the zero space.
    #[must_use]
    pub fn empty() -> Self {
        Self::minimal(&Graph::empty(0))
    }

    #[must_use]
    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    #[must_use]
    pub fn space(&self) -> &SympSpace {
        &self.space
    }

    #[must_use]
    pub fn decorations(&self) -> &[BitVec] {
        &self.deco
    }

    #[must_use]
    pub fn decoration(&self, p: usize) -> &BitVec {
        &self.deco[p]
    }

    #[must_use]
    pub fn node_count(&self) -> usize {
        self.deco.len()
    }

    #[must_use]
    pub fn space_type(&self) -> SpaceType {
        self.space.space_type()
    }

    /// Decorations form a basis.
    #[must_use]
    pub fn is_minimal(&self) -> bool {
        self.deco.len() == self.space.dim() && span_rank(&self.deco) == self.space.dim()
    }

    /// `dim × N` matrix whose column `p` is `f(p)`.
    #[must_use]
    pub fn decoration_matrix(&self) -> BitMat {
        BitMat::from_cols(self.space.dim(), &self.deco).expect("decorations live in the space")
    }

    /// Linear relations among the decorations: `{c ∈ F₂^N : Σ c_p f(p) = 0}`.
    /// Two root systems on the same graph are isomorphic iff these agree.
    #[must_use]
    pub fn relations(&self) -> Vec<BitVec> {
        span_basis(self.node_count(), &self.decoration_matrix().kernel_basis())
    }

    /// Same root system with node `i` of the result being node `order[i]`.
    pub fn relabeled(&self, order: &[usize]) -> Result<Self, SrsError> {
        let graph = self.graph.induced_subgraph(order)?;
        if order.len() != self.node_count() {
            return Err(SrsError::DecorationCount {
                expected: self.node_count(),
                found: order.len(),
            });
        }
        let deco = order.iter().map(|&p| self.deco[p].clone()).collect();
        validate_srs(graph, self.space.clone(), deco)
    }

    /// Restriction to the induced subgraph on `nodes`, re-coordinatized to the
    /// echelon basis of the span of the restricted decorations.
    pub fn restrict(&self, nodes: &[usize]) -> Result<Self, SrsError> {
        let graph = self.graph.induced_subgraph(nodes)?;
        let d = self.space.dim();
        let picked: Vec<BitVec> = nodes.iter().map(|&p| self.deco[p].clone()).collect();
        let basis = span_basis(d, &picked);
        let embed = BitMat::from_cols(d, &basis)?;
        let space = SympSpace::new(self.space.restricted_gram(&embed)?)?;
        let deco = picked
            .iter()
            .map(|f| {
                embed
                    .solve(f)
                    .map(|c| c.expect("decoration lies in its own span"))
            })
            .collect::<Result<Vec<_>, _>>()?;
        validate_srs(graph, space, deco)
    }

    /// Quotient by `U = span(u_basis) ⊆ V^⊥`, with the projection as witness.
    ///
    /// Coordinates of `V/U` are the non-pivot coordinates of the echelon basis
    /// of `U`.
    pub fn quotient(&self, u_basis: &[BitVec]) -> Result<(Self, SympMap), SrsError> {
        let d = self.space.dim();
        for u in u_basis {
            if u.dim() != d {
                return Err(Gf2Error::DimensionMismatch {
                    expected: d,
                    found: u.dim(),
                }
                .into());
            }
            if !self.space.is_in_radical(u) {
                return Err(SrsError::NotInRadical(u.clone()));
            }
        }
        let echelon = span_basis(d, u_basis);
        let pivots: Vec<usize> = echelon
            .iter()
            .map(|r| r.lowest_one().expect("echelon rows are nonzero"))
            .collect();
        let keep: Vec<usize> = (0..d).filter(|c| !pivots.contains(c)).collect();
        let reduce = |v: &BitVec| {
            let mut v = v.clone();
            for (row, &p) in echelon.iter().zip(&pivots) {
                if v.get(p) {
                    v.xor_assign(row);
                }
            }
            v.select(&keep)
        };
        let cols: Vec<BitVec> = (0..d).map(|j| reduce(&BitVec::unit(d, j))).collect();
        let matrix = BitMat::from_cols(keep.len(), &cols)?;
        let mut gram = BitMat::zeros(keep.len(), keep.len());
        for (a, &i) in keep.iter().enumerate() {
            for (b, &j) in keep.iter().enumerate() {
                gram.set(a, b, self.space.gram().get(i, j));
            }
        }
        let dst = SympSpace::new(gram)?;
        let map = SympMap::new(matrix, self.space.clone(), dst.clone())?;
        let deco = self.deco.iter().map(|f| map.apply(f)).collect();
        let srs = validate_srs(self.graph.clone(), dst, deco)?;
        Ok((srs, map))
    }

    /// `φ(v)` applied to every decoration, for a surjective symplectic `φ`.
    pub fn push_forward(&self, map: &SympMap) -> Result<Self, SrsError> {
        if map.src != self.space {
            return Err(SrsError::MapShape {
                rows: map.matrix.rows(),
                cols: map.matrix.cols(),
                expected_rows: map.dst.dim(),
                expected_cols: self.space.dim(),
            });
        }
        let deco = self.deco.iter().map(|f| map.apply(f)).collect();
        validate_srs(self.graph.clone(), map.dst.clone(), deco)
    }

    pub fn to_json_value(&self) -> Value {
        let ty = self.space_type();
        let deco: Map<String, Value> = self
            .deco
            .iter()
            .enumerate()
            .map(|(p, f)| (p.to_string(), Value::String(f.to_string())))
            .collect();
        json!({
            "graph": self.graph.to_json_value(),
            "dim": self.space.dim(),
            "gram": self.space.gram().to_bitstrings(),
            "type": [ty.n, ty.k],
            "deco": deco,
            "minimal": self.is_minimal(),
        })
    }

    /// Parses and validates the JSON form; derived fields (`type`, `minimal`),
    /// when present, must agree with the recomputed values.
    pub fn from_json_value(value: &Value) -> Result<Self, SrsError> {
        let bad = |m: &str| SrsError::Json(m.to_string());
        let obj = value.as_object().ok_or_else(|| bad("expected an object"))?;
        let graph = Graph::from_json_value(obj.get("graph").ok_or_else(|| bad("missing graph"))?)?;
        let dim = obj
            .get("dim")
            .and_then(Value::as_u64)
            .ok_or_else(|| bad("missing dim"))? as usize;
        let rows: Vec<String> = obj
            .get("gram")
            .and_then(Value::as_array)
            .ok_or_else(|| bad("missing gram"))?
            .iter()
            .map(|r| r.as_str().map(str::to_owned).ok_or_else(|| bad("gram rows must be strings")))
            .collect::<Result<_, _>>()?;
        let gram = if rows.is_empty() {
            BitMat::zeros(0, 0)
        } else {
            BitMat::from_bitstrings(&rows)?
        };
        if gram.rows() != dim || gram.cols() != dim {
            return Err(bad("gram does not match dim"));
        }
        let space = SympSpace::new(gram)?;
        let deco_obj = obj
            .get("deco")
            .and_then(Value::as_object)
            .ok_or_else(|| bad("missing deco"))?;
        let n = graph.node_count();
        if deco_obj.len() != n {
            return Err(SrsError::DecorationCount {
                expected: n,
                found: deco_obj.len(),
            });
        }
        let deco = (0..n)
            .map(|p| {
                let s = deco_obj
                    .get(&p.to_string())
                    .and_then(Value::as_str)
                    .ok_or_else(|| SrsError::Json(format!("missing decoration for node {p}")))?;
                let v: BitVec = s.parse()?;
                Ok(if dim == 0 && v.dim() == 0 { BitVec::zeros(0) } else { v })
            })
            .collect::<Result<Vec<_>, SrsError>>()?;
        let srs = validate_srs(graph, space, deco)?;
        if let Some(ty) = obj.get("type") {
            let t = srs.space_type();
            if *ty != json!([t.n, t.k]) {
                return Err(bad("type field disagrees with the Gram matrix"));
            }
        }
        if let Some(m) = obj.get("minimal") {
            if m.as_bool() != Some(srs.is_minimal()) {
                return Err(bad("minimal field disagrees with the decorations"));
            }
        }
        Ok(srs)
    }
}

fn same_graph(a: &Srs, b: &Srs) -> Result<(), SrsError> {
    if a.graph.node_count() != b.graph.node_count() || a.graph.adjacency() != b.graph.adjacency() {
        return Err(SrsError::GraphMismatch);
    }
    Ok(())
}

/// The isomorphism `φ` with `φ ∘ f_a = f_b`, if one exists.
pub fn srs_isomorphic(a: &Srs, b: &Srs) -> Result<Option<SympMap>, SrsError> {
    same_graph(a, b)?;
    let d = a.space.dim();
    if b.space.dim() != d {
        return Ok(None);
    }
    // First basis among a's decorations, by node order.
    let pivots = a.decoration_matrix().row_reduce().pivots;
    let a_basis: Vec<BitVec> = pivots.iter().map(|&p| a.deco[p].clone()).collect();
    let b_basis: Vec<BitVec> = pivots.iter().map(|&p| b.deco[p].clone()).collect();
    let a_mat = BitMat::from_cols(d, &a_basis)?;
    let b_mat = BitMat::from_cols(d, &b_basis)?;
    let matrix = b_mat.mul(&a_mat.inverse()?)?;
    let consistent = a
        .deco
        .iter()
        .zip(&b.deco)
        .all(|(fa, fb)| matrix.mul_vec(fa).map(|v| v == *fb).unwrap_or(false));
    if !consistent || matrix.rank() != d {
        return Ok(None);
    }
    match SympMap::new(matrix, a.space.clone(), b.space.clone()) {
        Ok(map) => Ok(Some(map)),
        Err(SrsError::NotSymplectic) => Ok(None),
        Err(e) => Err(e),
    }
}

/// The unique homomorphism out of a minimal root system.
pub fn universal_map(a: &Srs, b: &Srs) -> Result<SympMap, SrsError> {
    same_graph(a, b)?;
    if !a.is_minimal() {
        return Err(SrsError::NotMinimal);
    }
    let inv = a.decoration_matrix().inverse()?;
    let matrix = b.decoration_matrix().mul(&inv)?;
    SympMap::new(matrix, a.space.clone(), b.space.clone())
}

/// One quotient of the minimal root system, by the radical subspace `kernel`.
#[derive(Debug, Clone)]
pub struct QuotientClass {
    /// Echelon basis of `U ⊆ V^⊥` in the coordinates of the minimal space.
    pub kernel: Vec<BitVec>,
    pub srs: Srs,
    pub map: SympMap,
}

/// All subspaces of `F₂^k` as echelon bases, by dimension, then pivot set,
/// then free entries in counting order.
#[must_use]
pub fn subspaces(k: usize) -> Vec<Vec<BitVec>> {
    let mut out = Vec::new();
    for d in 0..=k {
        let mut pivots: Vec<usize> = (0..d).collect();
        loop {
            // Free slots: row r, column c > pivot r that is not a pivot.
            let slots: Vec<(usize, usize)> = pivots
                .iter()
                .enumerate()
                .flat_map(|(r, &p)| {
                    let pivots = &pivots;
                    ((p + 1)..k).filter(move |c| !pivots.contains(c)).map(move |c| (r, c))
                })
                .collect();
            for fill in 0u64..(1u64 << slots.len()) {
                let mut rows: Vec<BitVec> = pivots.iter().map(|&p| BitVec::unit(k, p)).collect();
                for (b, &(r, c)) in slots.iter().enumerate() {
                    if fill >> b & 1 == 1 {
                        rows[r].set(c, true);
                    }
                }
                out.push(rows);
            }
            // Next d-combination of 0..k.
            let Some(i) = (0..d).rev().find(|&i| pivots[i] < k - d + i) else {
                break;
            };
            pivots[i] += 1;
            for j in (i + 1)..d {
                pivots[j] = pivots[j - 1] + 1;
            }
        }
    }
    out
}

/// Every root system on `graph` up to isomorphism: one quotient of the minimal
/// root system per subspace of its radical, minimal one first.
pub fn enumerate_quotients(graph: &Graph) -> Result<Vec<QuotientClass>, SrsError> {
    let minimal = Srs::minimal(graph);
    let radical = minimal.space.radical();
    let k = radical.len();
    if k > MAX_QUOTIENT_RADICAL {
        return Err(SrsError::RadicalTooLarge {
            k,
            cap: MAX_QUOTIENT_RADICAL,
        });
    }
    let n = graph.node_count();
    let rad_mat = BitMat::from_cols(n, &radical)?;
    subspaces(k)
        .into_iter()
        .map(|coeffs| {
            let vectors: Vec<BitVec> = coeffs
                .iter()
                .map(|c| rad_mat.mul_vec(c).expect("coefficients match the radical basis"))
                .collect();
            let kernel = span_basis(n, &vectors);
            let (srs, map) = minimal.quotient(&kernel)?;
            Ok(QuotientClass { kernel, srs, map })
        })
        .collect()
}

/// `(type, number of classes)` in order of decreasing nullity.
#[must_use]
pub fn type_histogram(classes: &[QuotientClass]) -> Vec<(SpaceType, usize)> {
    let mut out: Vec<(SpaceType, usize)> = Vec::new();
    for c in classes {
        let t = c.srs.space_type();
        match out.iter_mut().find(|(u, _)| *u == t) {
            Some((_, count)) => *count += 1,
            None => out.push((t, 1)),
        }
    }
    out.sort_by(|a, b| b.0.k.cmp(&a.0.k).then(a.0.n.cmp(&b.0.n)));
    out
}

/// How the type changes when one node is deleted.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RestrictionCase {
    /// Same type; the deleted decoration was dependent.
    SameType,
    /// `(n, k) → (n, k−1)`.
    LostNullvector,
    /// `(n, k) → (n−1, k+1)`.
    LostPlane,
}

/// Classifies `full → restricted`, or `None` if neither case applies.
#[must_use]
pub fn restriction_case(full: SpaceType, restricted: SpaceType) -> Option<RestrictionCase> {
    if restricted == full {
        Some(RestrictionCase::SameType)
    } else if full.k >= 1 && restricted == SpaceType::new(full.n, full.k - 1) {
        Some(RestrictionCase::LostNullvector)
    } else if full.n >= 1 && restricted == SpaceType::new(full.n - 1, full.k + 1) {
        Some(RestrictionCase::LostPlane)
    } else {
        None
    }
}

/// `n ≤ |𝔾| − γ` for the minimal root system of `graph`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CocliqueBound {
    pub n: usize,
    pub gamma: usize,
    pub bound: usize,
    pub holds: bool,
}

pub fn coclique_bound_check(graph: &Graph) -> Result<CocliqueBound, SrsError> {
    let n = Srs::minimal(graph).space_type().n;
    let gamma = graph.coclique_number()?;
    let bound = graph.node_count() - gamma;
    Ok(CocliqueBound {
        n,
        gamma,
        bound,
        holds: n <= bound,
    })
}
