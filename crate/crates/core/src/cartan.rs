//! Cartan data, root systems over the integers, the mod-2 Weyl action, and the
//! explicit root systems on the simply-laced diagrams.
//!
//! Convention: `C_{α,β} = 2(α,β)/(α,α)`, `(α,β) = d_α C_{α,β}`, short roots
//! have `d = 1`, and `σ_α(β) = β − C_{α,β} α`.

use std::collections::{BTreeSet, HashSet, VecDeque};

use thiserror::Error;

use crate::gf2::{span_basis, BitMat, BitVec};
use crate::graph::{DynkinFamily, Graph, GraphError};
use crate::srs::{enumerate_quotients, type_histogram, validate_srs, Srs, SrsError};
use crate::symplectic::{SpaceType, SympSpace};

/// Largest root set produced by [`roots`].
pub const MAX_ROOTS: usize = 10_000;
/// Largest group or orbit explored by breadth-first search.
pub const MAX_BFS: usize = 1_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CartanError {
    #[error("Cartan matrix must be square with one symmetrizer per row")]
    Shape,
    #[error("diagonal entry {0} is not 2")]
    Diagonal(usize),
    #[error("entry ({0},{1}) is not a valid off-diagonal Cartan integer")]
    Entry(usize, usize),
    #[error("d_{0} C_({0},{1}) differs from d_{1} C_({1},{0})")]
    NotSymmetrizable(usize, usize),
    #[error("symmetrizers must be positive with smallest value 1")]
    Normalization,
    #[error("root closure exceeded {cap} roots; not of finite type")]
    NotFiniteType { cap: usize },
    #[error("breadth-first search exceeded {cap} elements")]
    CapExceeded { cap: usize },
    #[error("no diagram {family}{rank}")]
    InvalidDiagram { family: DynkinFamily, rank: usize },
    #[error("Weyl action check failed: {0}")]
    Verification(String),
    #[error(transparent)]
    Srs(#[from] SrsError),
    #[error(transparent)]
    Graph(#[from] GraphError),
}

/// A symmetrizable Cartan matrix with its symmetrizers.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CartanDatum {
    cartan: Vec<Vec<i64>>,
    d: Vec<i64>,
}

impl CartanDatum {
    pub fn new(cartan: Vec<Vec<i64>>, d: Vec<i64>) -> Result<Self, CartanError> {
        let n = cartan.len();
        if d.len() != n || cartan.iter().any(|r| r.len() != n) {
            return Err(CartanError::Shape);
        }
        if d.iter().any(|&x| x < 1) || (n > 0 && !d.contains(&1)) {
            return Err(CartanError::Normalization);
        }
        for i in 0..n {
            if cartan[i][i] != 2 {
                return Err(CartanError::Diagonal(i));
            }
            for j in 0..n {
                if i == j {
                    continue;
                }
                let (a, b) = (cartan[i][j], cartan[j][i]);
                if a > 0 || (a == 0) != (b == 0) {
                    return Err(CartanError::Entry(i, j));
                }
                if d[i] * a != d[j] * b {
                    return Err(CartanError::NotSymmetrizable(i, j));
                }
            }
        }
        Ok(Self { cartan, d })
    }

    /// Builds the datum from the symmetric pairing `(α_i, α_j)` and the
    /// symmetrizers `d_i = (α_i, α_i)/2`.
    fn from_pairing(pairing: &[Vec<i64>], d: Vec<i64>) -> Self {
        let n = d.len();
        let cartan = (0..n)
            .map(|i| (0..n).map(|j| pairing[i][j] / d[i]).collect())
            .collect();
        Self::new(cartan, d).expect("standard data are valid")
    }

    /// The finite-type datum of a named diagram.
    ///
    /// * `Aₙ`, `Dₙ`, `Eₙ` use the numbering of [`Graph::dynkin`].
    /// * `Bₙ`: chain `0 – … – n−1` with node `n−1` short.
    /// * `Cₙ`: chain `0 – … – n−1` with node `n−1` long.
    /// * `F₄`: chain with nodes 0, 1 long and 2, 3 short.
    /// * `G₂`: node 0 short, node 1 long.
    pub fn of(family: DynkinFamily, rank: usize) -> Result<Self, CartanError> {
        if !family.admits_rank(rank) {
            return Err(CartanError::InvalidDiagram { family, rank });
        }
        if family.is_simply_laced() {
            let g = Graph::dynkin(family, rank)?;
            let cartan = (0..rank)
                .map(|i| {
                    (0..rank)
                        .map(|j| match (i == j, g.has_edge(i, j)) {
                            (true, _) => 2,
                            (false, true) => -1,
                            (false, false) => 0,
                        })
                        .collect()
                })
                .collect();
            return Self::new(cartan, vec![1; rank]);
        }
        let chain = |d: Vec<i64>| {
            let n = d.len();
            let mut p = vec![vec![0i64; n]; n];
            for i in 0..n {
                p[i][i] = 2 * d[i];
                if i + 1 < n {
                    // Adjacent chain roots: (α,β) = −max(d_α, d_β) for the
                    // length ratios occurring in B, C, F, G.
                    let v = -d[i].max(d[i + 1]);
                    p[i][i + 1] = v;
                    p[i + 1][i] = v;
                }
            }
            Self::from_pairing(&p, d)
        };
        Ok(match family {
            DynkinFamily::B => chain((0..rank).map(|i| if i + 1 == rank { 1 } else { 2 }).collect()),
            DynkinFamily::C => chain((0..rank).map(|i| if i + 1 == rank { 2 } else { 1 }).collect()),
            DynkinFamily::F => chain(vec![2, 2, 1, 1]),
            DynkinFamily::G => chain(vec![1, 3]),
            _ => unreachable!("simply-laced families handled above"),
        })
    }

    #[must_use]
    pub fn size(&self) -> usize {
        self.d.len()
    }

    #[must_use]
    pub fn cartan(&self) -> &[Vec<i64>] {
        &self.cartan
    }

    #[must_use]
    pub fn entry(&self, i: usize, j: usize) -> i64 {
        self.cartan[i][j]
    }

    #[must_use]
    pub fn symmetrizers(&self) -> &[i64] {
        &self.d
    }

    /// `(α_i, α_j) = d_i C_{i,j}`.
    #[must_use]
    pub fn bilinear(&self, i: usize, j: usize) -> i64 {
        self.d[i] * self.cartan[i][j]
    }

    /// `σ_i(b)` for `b` in simple-root coordinates.
    #[must_use]
    pub fn reflect(&self, i: usize, b: &[i64]) -> Vec<i64> {
        let c: i64 = b.iter().zip(&self.cartan[i]).map(|(x, y)| x * y).sum();
        let mut out = b.to_vec();
        out[i] -= c;
        out
    }
}

/// Roots in simple-root coordinates: the closure of the simple roots under
/// all simple reflections, in lexicographic order.
pub fn roots(c: &CartanDatum) -> Result<BTreeSet<Vec<i64>>, CartanError> {
    let n = c.size();
    let mut seen: BTreeSet<Vec<i64>> = BTreeSet::new();
    let mut queue: VecDeque<Vec<i64>> = VecDeque::new();
    for i in 0..n {
        let mut e = vec![0; n];
        e[i] = 1;
        if seen.insert(e.clone()) {
            queue.push_back(e);
        }
    }
    while let Some(b) = queue.pop_front() {
        for i in 0..n {
            let r = c.reflect(i, &b);
            if !seen.contains(&r) {
                if seen.len() >= MAX_ROOTS {
                    return Err(CartanError::NotFiniteType { cap: MAX_ROOTS });
                }
                seen.insert(r.clone());
                queue.push_back(r);
            }
        }
    }
    Ok(seen)
}

/// Simple roots joined where `(α, β)` is odd.
#[must_use]
pub fn parity_graph(c: &CartanDatum) -> Graph {
    let n = c.size();
    let edges: Vec<(usize, usize)> = (0..n)
        .flat_map(|i| ((i + 1)..n).map(move |j| (i, j)))
        .filter(|&(i, j)| c.bilinear(i, j).rem_euclid(2) == 1)
        .collect();
    Graph::with_edges(n, &edges).expect("pairs are distinct and in range")
}

/// The Weyl group acting on the minimal root system of the parity graph.
#[derive(Debug, Clone)]
pub struct WeylRep {
    pub datum: CartanDatum,
    pub srs: Srs,
    /// `σ̃_i` in the decoration basis `f(α_j) = e_j`.
    pub generators: Vec<BitMat>,
    /// `(root, f̃(root))`, in root order.
    pub extended_deco: Vec<(Vec<i64>, BitVec)>,
}

impl WeylRep {
    #[must_use]
    pub fn space(&self) -> &SympSpace {
        self.srs.space()
    }

    /// `f̃(b) = Σ b_γ f(α_γ)` mod 2.
    #[must_use]
    pub fn extend(&self, b: &[i64]) -> BitVec {
        mod2(b)
    }

    /// Roots grouped by their image under `f̃`, by image.
    #[must_use]
    pub fn fibers(&self) -> Vec<(BitVec, Vec<Vec<i64>>)> {
        let mut out: Vec<(BitVec, Vec<Vec<i64>>)> = Vec::new();
        for (r, v) in &self.extended_deco {
            match out.iter_mut().find(|(w, _)| w == v) {
                Some((_, rs)) => rs.push(r.clone()),
                None => out.push((v.clone(), vec![r.clone()])),
            }
        }
        out.sort();
        out
    }
}

fn mod2(b: &[i64]) -> BitVec {
    BitVec::from_bools(&b.iter().map(|x| x.rem_euclid(2) == 1).collect::<Vec<_>>())
}

/// Builds `σ̃_i(f(β)) = f(β) − C_{i,β} f(α_i)` mod 2 and checks that each
/// generator is symplectic and that `f̃ ∘ σ_i = σ̃_i ∘ f̃` on every root.
pub fn weyl_rep(c: &CartanDatum) -> Result<WeylRep, CartanError> {
    let n = c.size();
    let srs = Srs::minimal(&parity_graph(c));
    let gram = srs.space().gram().clone();
    let generators: Vec<BitMat> = (0..n)
        .map(|i| {
            let mut m = BitMat::identity(n);
            for j in 0..n {
                if j != i && c.entry(i, j).rem_euclid(2) == 1 {
                    m.set(i, j, true);
                }
            }
            m
        })
        .collect();
    for (i, m) in generators.iter().enumerate() {
        if gram.congruence(m).expect("square matrices") != gram {
            return Err(CartanError::Verification(format!("generator {i} is not symplectic")));
        }
    }
    let all = roots(c)?;
    let extended_deco: Vec<(Vec<i64>, BitVec)> = all.iter().map(|r| (r.clone(), mod2(r))).collect();
    for (r, fr) in &extended_deco {
        for (i, m) in generators.iter().enumerate() {
            let lhs = mod2(&c.reflect(i, r));
            let rhs = m.mul_vec(fr).expect("dimensions agree");
            if lhs != rhs {
                return Err(CartanError::Verification(format!(
                    "intertwining fails for generator {i} on root {r:?}"
                )));
            }
        }
    }
    Ok(WeylRep {
        datum: c.clone(),
        srs,
        generators,
        extended_deco,
    })
}

/// Orbit of `v` under the generated group, sorted.
pub fn weyl_orbit(rep: &WeylRep, v: &BitVec) -> Result<BTreeSet<BitVec>, CartanError> {
    let mut seen = BTreeSet::from([v.clone()]);
    let mut queue = VecDeque::from([v.clone()]);
    while let Some(w) = queue.pop_front() {
        for m in &rep.generators {
            let u = m.mul_vec(&w).expect("vector lives in the representation space");
            if !seen.contains(&u) {
                if seen.len() >= MAX_BFS {
                    return Err(CartanError::CapExceeded { cap: MAX_BFS });
                }
                seen.insert(u.clone());
                queue.push_back(u);
            }
        }
    }
    Ok(seen)
}

/// Order of the matrix group generated by `σ̃_i`, by breadth-first search.
pub fn group_order(rep: &WeylRep) -> Result<usize, CartanError> {
    group_order_capped(rep, MAX_BFS)
}

pub fn group_order_capped(rep: &WeylRep, cap: usize) -> Result<usize, CartanError> {
    let id = BitMat::identity(rep.space().dim());
    let mut seen: HashSet<BitMat> = HashSet::from([id.clone()]);
    let mut queue = VecDeque::from([id]);
    while let Some(g) = queue.pop_front() {
        for m in &rep.generators {
            let h = m.mul(&g).expect("square matrices of equal size");
            if !seen.contains(&h) {
                if seen.len() >= cap {
                    return Err(CartanError::CapExceeded { cap });
                }
                seen.insert(h.clone());
                queue.push_back(h);
            }
        }
    }
    Ok(seen.len())
}

fn x(i: usize) -> usize {
    2 * (i - 1)
}

fn y(i: usize) -> usize {
    2 * (i - 1) + 1
}

/// Decorations of `A₂ₙ` in coordinates `x₁, y₁, …, xₙ, yₙ` followed by
/// `extra` zero coordinates.
fn a_even_chain(n: usize, extra: usize) -> Vec<BitVec> {
    let dim = 2 * n + extra;
    let pair = |use_x: bool, i: usize| {
        let c = if use_x { x } else { y };
        let mut ones = vec![c(i)];
        if i > 1 {
            ones.push(c(i - 1));
        }
        BitVec::from_ones(dim, ones)
    };
    let mut out = vec![BitVec::zeros(dim); 2 * n];
    for i in 0..n {
        out[i] = pair(i % 2 == 0, n - i);
        out[2 * n - 1 - i] = pair(i % 2 == 1, n - i);
    }
    out
}

/// The minimal root system of a simply-laced diagram with the explicit
/// decorations: `x₁, y₁, …, xₙ, yₙ, z₁, …` coordinates, nodes numbered as in
/// [`Graph::dynkin`].
pub fn ade_srs(family: DynkinFamily, rank: usize) -> Result<Srs, CartanError> {
    if !family.is_simply_laced() || !family.admits_rank(rank) {
        return Err(CartanError::InvalidDiagram { family, rank });
    }
    let graph = Graph::dynkin(family, rank)?;
    let ones = |dim: usize, v: &[usize]| BitVec::from_ones(dim, v.iter().copied());
    let (ty, deco) = match (family, rank) {
        (DynkinFamily::A, r) if r % 2 == 0 => (SpaceType::new(r / 2, 0), a_even_chain(r / 2, 0)),
        (DynkinFamily::A, r) => {
            let n = r / 2;
            let dim = 2 * n + 1;
            let mut deco = a_even_chain(n, 1);
            let mut last = vec![dim - 1];
            if n > 0 {
                last.push(x(n));
            }
            deco.push(ones(dim, &last));
            (SpaceType::new(n, 1), deco)
        }
        (DynkinFamily::D, r) if r % 2 == 1 => {
            let n = (r - 1) / 2;
            let dim = 2 * n + 1;
            let mut deco = a_even_chain(n, 1);
            deco.push(ones(dim, &[dim - 1, x(n), x(n - 1)]));
            (SpaceType::new(n, 1), deco)
        }
        (DynkinFamily::D, r) => {
            let n = (r - 2) / 2;
            let dim = 2 * n + 2;
            let mut deco = a_even_chain(n, 2);
            deco.push(ones(dim, &[2 * n, y(n)]));
            deco.push(ones(dim, &[2 * n + 1, y(n)]));
            (SpaceType::new(n, 2), deco)
        }
        (DynkinFamily::E, 7) => {
            let mut deco = a_even_chain(3, 1);
            deco.push(ones(7, &[6, y(3), y(2), y(1)]));
            (SpaceType::new(3, 1), deco)
        }
        (DynkinFamily::E, r) => {
            // E₆ from A₄, E₈ from A₆, adding one hyperbolic pair.
            let n = (r - 2) / 2;
            let dim = 2 * n + 2;
            let mut deco = a_even_chain(n, 2);
            deco.push(ones(dim, &[y(n + 1), y(n)]));
            deco.push(ones(dim, &[x(n + 1), x(n), x(n - 1)]));
            (SpaceType::new(n + 1, 0), deco)
        }
        _ => unreachable!("rank checked above"),
    };
    Ok(validate_srs(graph, SympSpace::standard(ty), deco)?)
}

/// `(type, number of quotient classes)` for a named diagram, by decreasing
/// nullity.
pub fn ade_table(family: DynkinFamily, rank: usize) -> Result<Vec<(SpaceType, usize)>, CartanError> {
    let g = Graph::dynkin(family, rank)?;
    Ok(type_histogram(&enumerate_quotients(&g)?))
}

/// A graph automorphism and the permutation it induces on the quotient
/// classes of [`enumerate_quotients`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AutomorphismAction {
    /// Node `i ↦ perm[i]`.
    pub perm: Vec<usize>,
    /// Class `c ↦ class_perm[c]`.
    pub class_perm: Vec<usize>,
}

/// For every automorphism `π`, the class of `π·U` for each quotient kernel `U`,
/// where `π` acts on the minimal space by `e_p ↦ e_{π(p)}`.
pub fn automorphism_action_on_quotients(g: &Graph) -> Result<Vec<AutomorphismAction>, CartanError> {
    let classes = enumerate_quotients(g)?;
    let n = g.node_count();
    let auts = g.automorphisms()?;
    Ok(auts
        .into_iter()
        .map(|perm| {
            let class_perm = classes
                .iter()
                .map(|c| {
                    let moved: Vec<BitVec> = c
                        .kernel
                        .iter()
                        .map(|u| BitVec::from_ones(n, u.ones().map(|p| perm[p])))
                        .collect();
                    let image = span_basis(n, &moved);
                    classes
                        .iter()
                        .position(|d| d.kernel == image)
                        .expect("automorphisms preserve the radical")
                })
                .collect();
            AutomorphismAction { perm, class_perm }
        })
        .collect())
}
