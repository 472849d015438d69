//! Exhaustive and randomized property sweeps, reported per checked statement.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use crate::cartan::{ade_srs, ade_table, group_order, weyl_rep, CartanDatum};
use crate::extend::{
    build_by_extension, double_extend_extraspecial, extend_minimal, ExtensionCase, NeighborhoodIndicator,
};
use crate::gf2::{BitMat, BitVec};
use crate::graph::{isomorphism_classes, DynkinFamily, Graph};
use crate::grp2::{burnside_check, commutativity_graph, extraspecial_sign, lift_decoration, make_group, CocycleGroup, ExtraspecialSign};
use crate::srs::{
    coclique_bound_check, enumerate_quotients, restriction_case, srs_isomorphic, RestrictionCase, Srs,
};
use crate::symplectic::{random_completion_choices, SpaceType, SympSpace};
use crate::Error;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Suite {
    Restriction,
    Extension,
    Weyl,
    Group,
    Coclique,
    All,
}

impl std::str::FromStr for Suite {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Ok(match s {
            "restriction" => Self::Restriction,
            "extension" => Self::Extension,
            "weyl" => Self::Weyl,
            "group" => Self::Group,
            "coclique" => Self::Coclique,
            "all" => Self::All,
            other => return Err(format!("unknown suite {other:?}")),
        })
    }
}

impl Suite {
    #[must_use]
    pub fn name(self) -> &'static str {
        match self {
            Self::Restriction => "restriction",
            Self::Extension => "extension",
            Self::Weyl => "weyl",
            Self::Group => "group",
            Self::Coclique => "coclique",
            Self::All => "all",
        }
    }
}

/// Sweep sizes. `None` picks the suite default (smaller under `quick`).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Options {
    pub max_nodes: Option<usize>,
    pub max_rank: Option<usize>,
    pub quick: bool,
    pub seed: u64,
}

impl Default for Options {
    fn default() -> Self {
        Self {
            max_nodes: None,
            max_rank: None,
            quick: false,
            seed: DEFAULT_SEED,
        }
    }
}

pub const DEFAULT_SEED: u64 = 0x5eed_2024;

/// Cases and failures for one checked statement.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Check {
    pub name: String,
    pub cases: usize,
    pub failures: usize,
    /// The first failing instance.
    pub example: Option<String>,
}

impl Check {
    fn new(name: &str) -> Self {
        Self {
            name: name.to_string(),
            cases: 0,
            failures: 0,
            example: None,
        }
    }

    fn record(&mut self, ok: bool, describe: impl FnOnce() -> String) {
        self.cases += 1;
        if !ok {
            self.failures += 1;
            if self.example.is_none() {
                self.example = Some(describe());
            }
        }
    }

    #[must_use]
    pub fn passed(&self) -> bool {
        self.failures == 0
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SuiteReport {
    pub suite: &'static str,
    pub checks: Vec<Check>,
}

impl SuiteReport {
    #[must_use]
    pub fn passed(&self) -> bool {
        self.checks.iter().all(Check::passed)
    }

    pub fn to_json_value(&self) -> Value {
        json!({
            "suite": self.suite,
            "passed": self.passed(),
            "checks": self.checks.iter().map(|c| json!({
                "name": c.name,
                "cases": c.cases,
                "failures": c.failures,
                "example": c.example,
            })).collect::<Vec<_>>(),
        })
    }
}

fn describe_graph(g: &Graph) -> String {
    format!("{} nodes, edges {:?}", g.node_count(), g.edges())
}

fn classes_up_to(max_nodes: usize) -> Vec<Graph> {
    (0..=max_nodes).flat_map(isomorphism_classes).collect()
}

fn iso(a: &Srs, b: &Srs) -> Result<bool, Error> {
    Ok(srs_isomorphic(a, b)?.is_some())
}

pub fn run(suite: Suite, opts: &Options) -> Result<Vec<SuiteReport>, Error> {
    Ok(match suite {
        Suite::Restriction => vec![restriction(opts)?],
        Suite::Extension => vec![extension(opts)?],
        Suite::Weyl => vec![weyl(opts)?],
        Suite::Group => vec![group(opts)?],
        Suite::Coclique => vec![coclique(opts)?],
        Suite::All => vec![
            restriction(opts)?,
            extension(opts)?,
            weyl(opts)?,
            group(opts)?,
            coclique(opts)?,
        ],
    })
}

/// Node deletion changes the type by one of the three allowed steps.
pub fn restriction(opts: &Options) -> Result<SuiteReport, Error> {
    let max = opts.max_nodes.unwrap_or(if opts.quick { 5 } else { 6 }).min(7);
    let mut minimal = Check::new("deleting a node from a minimal root system drops a nullvector or a plane");
    let mut quotients = Check::new("deleting a node from any root system keeps the type only if it was not minimal");
    let mut additive = Check::new("minimal type of a disjoint union is the componentwise sum");
    let graphs = classes_up_to(max);
    for g in &graphs {
        let n = g.node_count();
        let full = Srs::minimal(g);
        for p in 0..n {
            let rest: Vec<usize> = (0..n).filter(|&q| q != p).collect();
            let t = full.restrict(&rest)?.space_type();
            let case = restriction_case(full.space_type(), t);
            minimal.record(
                matches!(case, Some(RestrictionCase::LostNullvector | RestrictionCase::LostPlane)),
                || format!("{}, delete {p}: {} -> {t}", describe_graph(g), full.space_type()),
            );
        }
        if Srs::minimal(g).space_type().k <= 6 {
            for class in enumerate_quotients(g)? {
                let s = &class.srs;
                for p in 0..n {
                    let rest: Vec<usize> = (0..n).filter(|&q| q != p).collect();
                    let t = s.restrict(&rest)?.space_type();
                    let ok = match restriction_case(s.space_type(), t) {
                        Some(RestrictionCase::SameType) => !s.is_minimal(),
                        Some(_) => true,
                        None => false,
                    };
                    quotients.record(ok, || {
                        format!("{}, quotient by {:?}, delete {p}", describe_graph(g), class.kernel)
                    });
                }
            }
        }
    }
    for a in &graphs {
        for b in &graphs {
            if a.node_count() + b.node_count() > max || a.node_count() == 0 || b.node_count() == 0 {
                continue;
            }
            let (ta, tb) = (Srs::minimal(a).space_type(), Srs::minimal(b).space_type());
            let t = Srs::minimal(&a.disjoint_union(b)).space_type();
            additive.record(t == SpaceType::new(ta.n + tb.n, ta.k + tb.k), || {
                format!("{} + {}", describe_graph(a), describe_graph(b))
            });
        }
    }
    Ok(SuiteReport {
        suite: "restriction",
        checks: vec![minimal, quotients, additive],
    })
}

/// Extension theorems: round trip, type transition, uniqueness, counting and
/// the two-node shortcut.
pub fn extension(opts: &Options) -> Result<SuiteReport, Error> {
    let max = opts.max_nodes.unwrap_or(if opts.quick { 4 } else { 5 }).min(6);
    let choice_rounds = if opts.quick { 3 } else { 10 };
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let mut round_trip = Check::new("restricting an extension recovers the original root system");
    let mut transition = Check::new("extension type is (n,k+1) or (n+1,k-1) matching the witness");
    let mut unique = Check::new("extension is isomorphic to the minimal root system of the extended graph");
    let mut replay = Check::new("witness replay reproduces the extension");
    let mut counting = Check::new("exactly 2^(2n) indicators give a new nullvector");
    let mut choices = Check::new("extensions under random completion choices are isomorphic");
    let mut double = Check::new("double extension agrees with two single extensions");
    let mut orders = Check::new("building by extension in any node order gives the minimal root system");

    for g in &classes_up_to(max) {
        let n = g.node_count();
        let s = Srs::minimal(g);
        let ty = s.space_type();
        let mut nullvector_cases = 0usize;
        for mask in 0..(1u64 << n) {
            let lambda = NeighborhoodIndicator::new(BitVec::from_mask(n, mask));
            let (ext, witness) = extend_minimal(&s, &lambda, None)?;
            let all: Vec<usize> = (0..n).collect();
            let back = ext.restrict(&all)?;
            round_trip.record(iso(&back, &s)?, || format!("{}, indicator {}", describe_graph(g), lambda.lambda));
            let t = ext.space_type();
            let ok = match witness.case {
                ExtensionCase::NewNullvector => t == SpaceType::new(ty.n, ty.k + 1),
                ExtensionCase::NewHyperbolic => ty.k >= 1 && t == SpaceType::new(ty.n + 1, ty.k - 1),
            };
            transition.record(ok, || format!("{}, indicator {}: {ty} -> {t}", describe_graph(g), lambda.lambda));
            if witness.case == ExtensionCase::NewNullvector {
                nullvector_cases += 1;
            }
            unique.record(iso(&ext, &Srs::minimal(ext.graph()))?, || {
                format!("{}, indicator {}", describe_graph(g), lambda.lambda)
            });
            replay.record(witness.replay(&s, &lambda)? == ext, || {
                format!("{}, indicator {}", describe_graph(g), lambda.lambda)
            });
            if ty.k > 0 && mask % 7 == 1 {
                for _ in 0..choice_rounds {
                    let (p, r) = random_completion_choices(s.space(), &mut rng);
                    let (other, _) = extend_minimal(&s, &lambda, Some((&p, &r)))?;
                    choices.record(iso(&other, &ext)?, || {
                        format!("{}, indicator {}, projection {p:?}", describe_graph(g), lambda.lambda)
                    });
                }
            }
        }
        if 2 * ty.n + ty.k <= 8 {
            counting.record(nullvector_cases == 1 << (2 * ty.n), || {
                format!("{}: {nullvector_cases} nullvector cases for type {ty}", describe_graph(g))
            });
        }
        if (2..=5).contains(&n) {
            let mut order: Vec<usize> = (0..n).rev().collect();
            order.rotate_left(1);
            let built = build_by_extension(g, &order)?;
            orders.record(iso(&built, &s)?, || format!("{}, order {order:?}", describe_graph(g)));
        }
    }

    for n in 1..=4usize {
        let a = ade_srs(DynkinFamily::A, 2 * n)?;
        let m = 2 * n;
        let ind = |nbrs: &[usize]| NeighborhoodIndicator::from_neighbors(m, nbrs);
        let mut targets = vec![(ind(&[0]), ind(&[m - 1])), (ind(&[0]), ind(&[0]))];
        if n == 2 || n == 3 {
            targets.push((ind(&[0]), ind(&[1])));
        }
        for (lp, lq) in targets {
            let d = double_extend_extraspecial(&a, &lp, &lq, false)?;
            let (first, _) = extend_minimal(&a, &lp, None)?;
            let mut lq2 = lq.lambda.resized(m + 1);
            lq2.set(m, false);
            let (chained, _) = extend_minimal(&first, &NeighborhoodIndicator::new(lq2), None)?;
            double.record(iso(&d.srs, &chained)?, || {
                format!("A{m} with p at {} and q at {}", lp.lambda, lq.lambda)
            });
        }
    }

    Ok(SuiteReport {
        suite: "extension",
        checks: vec![round_trip, transition, unique, replay, counting, choices, double, orders],
    })
}

/// Every finite-type datum of rank at most `max_rank`.
#[must_use]
pub fn finite_types(max_rank: usize) -> Vec<(DynkinFamily, usize)> {
    let families = [
        DynkinFamily::A,
        DynkinFamily::B,
        DynkinFamily::C,
        DynkinFamily::D,
        DynkinFamily::E,
        DynkinFamily::F,
        DynkinFamily::G,
    ];
    let mut out = Vec::new();
    for f in families {
        for r in 1..=max_rank {
            // C₂ coincides with B₂.
            if f.admits_rank(r) && !(f == DynkinFamily::C && r == 2) {
                out.push((f, r));
            }
        }
    }
    out
}

/// The table of quotient types for a simply-laced diagram.
#[must_use]
pub fn expected_ade_table(family: DynkinFamily, rank: usize) -> Vec<(SpaceType, usize)> {
    let t = |n, k| SpaceType::new(n, k);
    match (family, rank) {
        (DynkinFamily::A, r) if r % 2 == 0 => vec![(t(r / 2, 0), 1)],
        (DynkinFamily::A, r) => vec![(t(r / 2, 1), 1), (t(r / 2, 0), 1)],
        (DynkinFamily::D, r) if r % 2 == 1 => vec![(t(r / 2, 1), 1), (t(r / 2, 0), 1)],
        (DynkinFamily::D, r) => {
            let n = (r - 2) / 2;
            vec![(t(n, 2), 1), (t(n, 1), 3), (t(n, 0), 1)]
        }
        (DynkinFamily::E, 6) => vec![(t(3, 0), 1)],
        (DynkinFamily::E, 7) => vec![(t(3, 1), 1), (t(3, 0), 1)],
        (DynkinFamily::E, 8) => vec![(t(4, 0), 1)],
        _ => Vec::new(),
    }
}

/// Weyl action checks plus the explicit simply-laced root systems.
pub fn weyl(opts: &Options) -> Result<SuiteReport, Error> {
    let max = opts.max_rank.unwrap_or(if opts.quick { 4 } else { 8 });
    let mut symplectic = Check::new("Weyl generators preserve the symplectic form");
    let mut intertwine = Check::new("f~ intertwines the Weyl actions on roots and on V");
    let mut negation = Check::new("f~(-a) = f~(a) for every root");
    let mut orders = Check::new("Weyl image group order is computed (rank <= 4)");
    let mut explicit = Check::new("explicit decorations give the minimal root system (rank <= 12)");
    let mut table = Check::new("quotient classes match the simply-laced table (rank <= 12)");
    for (f, r) in finite_types(max) {
        let datum = CartanDatum::of(f, r)?;
        match weyl_rep(&datum) {
            Ok(rep) => {
                let gram = rep.space().gram().clone();
                for (i, m) in rep.generators.iter().enumerate() {
                    symplectic.record(gram.congruence(m)? == gram, || format!("{f}{r} generator {i}"));
                }
                for (root, img) in &rep.extended_deco {
                    for i in 0..r {
                        let lhs = rep.extend(&datum.reflect(i, root));
                        intertwine.record(lhs == rep.generators[i].mul_vec(img)?, || {
                            format!("{f}{r} generator {i} on root {root:?}")
                        });
                    }
                    let neg: Vec<i64> = root.iter().map(|x| -x).collect();
                    negation.record(rep.extend(&neg) == *img, || format!("{f}{r} root {root:?}"));
                }
                if r <= 4 {
                    orders.record(group_order(&rep).is_ok(), || format!("{f}{r}"));
                }
            }
            Err(e) => {
                intertwine.record(false, || format!("{f}{r}: {e}"));
            }
        }
    }
    let ade: Vec<(DynkinFamily, usize)> = (1..=12)
        .map(|r| (DynkinFamily::A, r))
        .chain((4..=12).map(|r| (DynkinFamily::D, r)))
        .chain((6..=8).map(|r| (DynkinFamily::E, r)))
        .collect();
    for (f, r) in ade {
        let s = ade_srs(f, r)?;
        explicit.record(iso(&s, &Srs::minimal(s.graph()))?, || format!("{f}{r}"));
        let got = ade_table(f, r)?;
        table.record(got == expected_ade_table(f, r), || format!("{f}{r}: {got:?}"));
    }
    Ok(SuiteReport {
        suite: "weyl",
        checks: vec![symplectic, intertwine, negation, orders, explicit, table],
    })
}

fn ade_spaces(max_dim: usize) -> Vec<(String, Srs)> {
    let mut out = Vec::new();
    for r in 1..=max_dim {
        out.push((format!("A{r}"), Srs::minimal(&Graph::dynkin(DynkinFamily::A, r).expect("valid"))));
    }
    for r in 4..=max_dim {
        out.push((format!("D{r}"), Srs::minimal(&Graph::dynkin(DynkinFamily::D, r).expect("valid"))));
    }
    for r in 6..=max_dim.min(8) {
        out.push((format!("E{r}"), Srs::minimal(&Graph::dynkin(DynkinFamily::E, r).expect("valid"))));
    }
    out
}

fn random_symmetric(d: usize, rng: &mut ChaCha8Rng) -> BitMat {
    use rand::Rng;
    let mut s = BitMat::zeros(d, d);
    for i in 0..d {
        for j in i..d {
            let b = rng.gen();
            s.set(i, j, b);
            s.set(j, i, b);
        }
    }
    s
}

/// Brute-force count of elements of order 4.
pub fn order_four_count(grp: &CocycleGroup) -> Result<usize, Error> {
    let mut count = 0;
    for g in grp.elements()? {
        if grp.element_order(&g)? == 4 {
            count += 1;
        }
    }
    Ok(count)
}

/// Group realization checks on spaces of ADE diagrams.
pub fn group(opts: &Options) -> Result<SuiteReport, Error> {
    let max_dim = if opts.quick { 6 } else { 8 };
    let assoc_dim = if opts.quick { 4 } else { 6 };
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let mut axioms = Check::new("group axioms hold (exhaustive, order <= 2^7)");
    let mut commutator = Check::new("[g,h] = (0, <g,h>) for all pairs (order <= 2^9)");
    let mut center = Check::new("extraspecial groups have centre of order 2");
    let mut reconstruct = Check::new("lifted decorations have the diagram as commutativity graph");
    let mut burnside = Check::new("lifts are minimal generating sets exactly for minimal root systems (nonabelian)");
    let mut sign = Check::new("sign from the quadratic form matches the order-4 count");
    for (name, s) in ade_spaces(max_dim) {
        let grp = make_group(s.space());
        let elems = grp.elements()?;
        if s.space().dim() <= assoc_dim {
            let id = grp.identity();
            let mut ok = true;
            for a in &elems {
                ok &= grp.multiply(a, &id)? == *a && grp.multiply(&grp.inverse(a)?, a)? == id;
                for b in &elems {
                    let ab = grp.multiply(a, b)?;
                    for c in &elems {
                        if grp.multiply(&ab, c)? != grp.multiply(a, &grp.multiply(b, c)?)? {
                            ok = false;
                        }
                    }
                }
            }
            axioms.record(ok, || name.clone());
        }
        let mut ok = true;
        for a in &elems {
            for b in &elems {
                let c = grp.commutator(a, b)?;
                ok &= c.vec.is_zero() && c.sign == s.space().pair(&a.vec, &b.vec);
            }
        }
        commutator.record(ok, || name.clone());
        if s.space().is_nondegenerate() {
            center.record(grp.center()?.len() == 2, || name.clone());
        }
        let lifts = lift_decoration(&s, &grp)?;
        reconstruct.record(commutativity_graph(&grp, &lifts)? == *s.graph(), || name.clone());
        // Generation by lifts needs [G,G] = ℤ₂, i.e. at least one edge.
        if s.graph().edge_count() == 0 {
            continue;
        }
        burnside.record(burnside_check(&grp, &lifts)?.minimal, || name.clone());
        for class in enumerate_quotients(s.graph())? {
            let q = &class.srs;
            let g = make_group(q.space());
            let r = burnside_check(&g, &lift_decoration(q, &g)?)?;
            burnside.record(r.generates && r.minimal == q.is_minimal(), || {
                format!("{name} quotient by {:?}", class.kernel)
            });
        }
    }
    for n in 1..=3usize {
        let space = SympSpace::standard(SpaceType::new(n, 0));
        let base = make_group(&space);
        let rounds = if opts.quick { 10 } else { 50 };
        for _ in 0..rounds {
            let grp = base.perturbed(&random_symmetric(2 * n, &mut rng))?;
            let oracle = order_four_count(&grp)?;
            let plus = 2 * ((1usize << (2 * n - 1)) - (1usize << (n - 1)));
            let expected = if oracle == plus {
                ExtraspecialSign::Plus
            } else {
                ExtraspecialSign::Minus
            };
            sign.record(extraspecial_sign(&grp)? == expected, || format!("type ({n},0), beta {:?}", grp.beta()));
        }
    }
    Ok(SuiteReport {
        suite: "group",
        checks: vec![axioms, commutator, center, reconstruct, burnside, sign],
    })
}

/// Every graph on at most 8 nodes up to isomorphism: the classes on 7 nodes
/// with one more node attached in every possible way.
fn coclique_graphs(max_nodes: usize) -> Vec<Graph> {
    let direct = max_nodes.min(7);
    let mut out = classes_up_to(direct);
    if max_nodes >= 8 {
        for g in isomorphism_classes(7) {
            for mask in 0..(1u64 << 7) {
                out.push(g.with_new_node(&BitVec::from_mask(7, mask)));
            }
        }
    }
    out
}

/// The coclique bound `n ≤ |𝔾| − γ`.
pub fn coclique(opts: &Options) -> Result<SuiteReport, Error> {
    let max = opts.max_nodes.unwrap_or(if opts.quick { 6 } else { 8 }).min(8);
    let mut bound = Check::new("n <= |G| - gamma for every graph");
    let mut empty = Check::new("equality on totally disconnected graphs");
    let mut ade = Check::new("equality on simply-laced diagrams of rank <= 8");
    let mut complete = Check::new("K_2m has type (m,0) and K_2m+1 has type (m,1), N <= 12");
    for g in coclique_graphs(max) {
        let b = coclique_bound_check(&g)?;
        bound.record(b.holds, || format!("{}: n = {}, bound = {}", describe_graph(&g), b.n, b.bound));
    }
    for n in 0..=12 {
        let b = coclique_bound_check(&Graph::empty(n))?;
        empty.record(b.n == b.bound, || format!("{n} isolated nodes"));
        if n >= 1 {
            let t = Srs::minimal(&Graph::complete(n)).space_type();
            complete.record(t == SpaceType::new(n / 2, n % 2), || format!("K{n}: {t}"));
        }
    }
    for (f, r) in finite_types(8) {
        if !f.is_simply_laced() {
            continue;
        }
        let b = coclique_bound_check(&Graph::dynkin(f, r)?)?;
        ade.record(b.n == b.bound, || format!("{f}{r}: n = {}, bound = {}", b.n, b.bound));
    }
    Ok(SuiteReport {
        suite: "coclique",
        checks: vec![bound, empty, ade, complete],
    })
}
