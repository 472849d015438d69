//! Acceptance criteria. Run with
//! `cargo test -p srs-core --test acceptance -- --nocapture --test-threads=1`
//! to see one PASS/FAIL line per criterion.

use std::collections::{BTreeMap, BTreeSet, HashSet};
use std::time::{Duration, Instant};

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use srs_core::cartan::{ade_srs, group_order, roots, weyl_rep, CartanDatum};
use srs_core::extend::{build_by_extension, extend_minimal, NeighborhoodIndicator};
use srs_core::graph::{all_labeled_graphs, isomorphism_classes};
use srs_core::grp2::{
    burnside_check, commutativity_graph, extraspecial_sign, lift_decoration, make_group, CocycleGroup,
    ExtraspecialSign, GroupElement,
};
use srs_core::srs::{enumerate_quotients, srs_isomorphic, type_histogram, validate_srs};
use srs_core::symplectic::{mixed_completion, random_completion_choices};
use srs_core::{BitMat, BitVec, DynkinFamily, Graph, Srs, SpaceType, SympSpace};

use DynkinFamily::{A, B, C, D, E, F, G};

const SEED: u64 = 0x5eed_2024;
const ADE_TABLE_BUDGET: Duration = Duration::from_secs(5);
const UNIQUENESS_BUDGET: Duration = Duration::from_secs(60);
const WEYL_BUDGET: Duration = Duration::from_secs(10);

fn report(id: u32, title: &str, failures: &[String], detail: &str) {
    let status = if failures.is_empty() { "PASS" } else { "FAIL" };
    println!("{status} criterion {id}: {title} ({detail})");
    for f in failures.iter().take(10) {
        println!("    {f}");
    }
    assert!(failures.is_empty(), "criterion {id} failed: {} failures", failures.len());
}

// ---------------------------------------------------------------------------
// Oracles on plain bit masks
// ---------------------------------------------------------------------------

fn mask_rank(rows: &[u64]) -> usize {
    let mut basis: Vec<u64> = Vec::new();
    for &r in rows {
        let mut v = r;
        for &b in &basis {
            v = v.min(v ^ b);
        }
        if v != 0 {
            basis.push(v);
        }
    }
    basis.len()
}

fn adjacency_masks(g: &Graph) -> Vec<u64> {
    (0..g.node_count())
        .map(|i| (0..g.node_count()).filter(|&j| g.has_edge(i, j)).map(|j| 1u64 << j).sum())
        .collect()
}

/// Minimal type straight from the adjacency rank.
fn minimal_type(g: &Graph) -> SpaceType {
    let r = mask_rank(&adjacency_masks(g));
    SpaceType::new(r / 2, g.node_count() - r)
}

fn coclique_number(g: &Graph) -> usize {
    let adj = adjacency_masks(g);
    (0u64..1 << g.node_count())
        .filter(|s| (0..g.node_count()).all(|i| s >> i & 1 == 0 || adj[i] & s == 0))
        .map(|s| s.count_ones() as usize)
        .max()
        .unwrap_or(0)
}

fn standard_gram(ty: SpaceType) -> Vec<u64> {
    let d = ty.dim();
    let mut rows = vec![0u64; d];
    for i in 0..ty.n {
        rows[2 * i] |= 1 << (2 * i + 1);
        rows[2 * i + 1] |= 1 << (2 * i);
    }
    rows
}

fn pair(gram: &[u64], u: u64, v: u64) -> bool {
    gram.iter()
        .enumerate()
        .filter(|(i, _)| u >> i & 1 == 1)
        .fold(0, |acc, (_, r)| acc ^ (r & v).count_ones())
        & 1
        == 1
}

/// Node subsets whose decorations sum to zero, as masks.
fn relation_set(deco: &[u64]) -> BTreeSet<u64> {
    (0u64..1 << deco.len())
        .filter(|s| {
            deco.iter()
                .enumerate()
                .filter(|(i, _)| s >> i & 1 == 1)
                .fold(0, |acc, (_, d)| acc ^ d)
                == 0
        })
        .collect()
}

fn span_masks(dim: usize, basis: &[BitVec]) -> BTreeSet<u64> {
    (0u64..1 << basis.len())
        .map(|c| {
            basis.iter()
                .enumerate()
                .filter(|(i, _)| c >> i & 1 == 1)
                .fold(0, |acc, (_, b)| acc ^ b.to_mask())
        })
        .inspect(|m| assert!(*m < 1 << dim))
        .collect()
}

fn parse_vector(ty: SpaceType, text: &str) -> BitVec {
    let ones = text.split('+').map(|t| {
        let (letter, idx) = t.split_at(1);
        let i: usize = idx.parse().unwrap();
        match letter {
            "x" => 2 * (i - 1),
            "y" => 2 * (i - 1) + 1,
            "z" => 2 * ty.n + i - 1,
            _ => panic!("bad coordinate {t}"),
        }
    });
    BitVec::from_ones(ty.dim(), ones)
}

/// Checks that `map` sends every decoration of `a` to the one of `b` and
/// preserves the form.
fn check_iso(a: &Srs, b: &Srs) -> Result<(), String> {
    let Some(map) = srs_isomorphic(a, b).map_err(|e| e.to_string())? else {
        return Err("not isomorphic".into());
    };
    if !map.is_bijective() {
        return Err("map not bijective".into());
    }
    for p in 0..a.node_count() {
        if map.apply(a.decoration(p)) != *b.decoration(p) {
            return Err(format!("decoration {p} not intertwined"));
        }
    }
    let pulled = b.space().gram().congruence(&map.matrix).map_err(|e| e.to_string())?;
    if pulled != *a.space().gram() {
        return Err("form not preserved".into());
    }
    Ok(())
}

// ---------------------------------------------------------------------------
// 1. ADE tables
// ---------------------------------------------------------------------------

fn expected_table(family: DynkinFamily, rank: usize) -> Vec<(SpaceType, usize)> {
    let t = |n, k| SpaceType::new(n, k);
    match (family, rank) {
        (A, r) if r % 2 == 0 => vec![(t(r / 2, 0), 1)],
        (A, r) => vec![(t(r / 2, 1), 1), (t(r / 2, 0), 1)],
        (D, r) if r % 2 == 1 => vec![(t(r / 2, 1), 1), (t(r / 2, 0), 1)],
        (D, r) => {
            let n = (r - 2) / 2;
            vec![(t(n, 2), 1), (t(n, 1), 3), (t(n, 0), 1)]
        }
        (E, 6) => vec![(t(3, 0), 1)],
        (E, 7) => vec![(t(3, 1), 1), (t(3, 0), 1)],
        (E, 8) => vec![(t(4, 0), 1)],
        _ => unreachable!(),
    }
}

fn ade_diagrams(max_a: usize, max_d: usize) -> Vec<(DynkinFamily, usize)> {
    (1..=max_a)
        .map(|r| (A, r))
        .chain((4..=max_d).map(|r| (D, r)))
        .chain([(E, 6), (E, 7), (E, 8)])
        .collect()
}

#[test]
fn criterion_1_ade_tables() {
    let start = Instant::now();
    let mut failures = Vec::new();
    let diagrams = ade_diagrams(12, 12);
    for &(f, r) in &diagrams {
        let g = Graph::dynkin(f, r).unwrap();
        let expected = expected_table(f, r);
        let minimal = Srs::minimal(&g).space_type();
        if minimal != expected[0].0 || minimal != minimal_type(&g) {
            failures.push(format!("{f}{r}: minimal type {minimal}"));
        }
        let hist = type_histogram(&enumerate_quotients(&g).unwrap());
        if hist != expected {
            failures.push(format!("{f}{r}: table {hist:?}, expected {expected:?}"));
        }
    }
    let elapsed = start.elapsed();
    if elapsed >= ADE_TABLE_BUDGET {
        failures.push(format!("took {elapsed:?}"));
    }
    report(
        1,
        "ADE table reproduction",
        &failures,
        &format!("{} diagrams in {:.2?}", diagrams.len(), elapsed),
    );
}

// ---------------------------------------------------------------------------
// 2. Explicit decorations
// ---------------------------------------------------------------------------

fn a_even_expected(n: usize) -> &'static [&'static str] {
    match n {
        1 => &["x1", "y1"],
        2 => &["x2+x1", "y1", "x1", "y2+y1"],
        3 => &["x3+x2", "y2+y1", "x1", "y1", "x2+x1", "y3+y2"],
        4 => &["x4+x3", "y3+y2", "x2+x1", "y1", "x1", "y2+y1", "x3+x2", "y4+y3"],
        5 => &["x5+x4", "y4+y3", "x3+x2", "y2+y1", "x1", "y1", "x2+x1", "y3+y2", "x4+x3", "y5+y4"],
        _ => unreachable!(),
    }
}

#[test]
fn criterion_2_explicit_decorations() {
    let mut failures = Vec::new();
    let mut checked = 0;
    let mut cases: Vec<(DynkinFamily, usize, Vec<String>)> = Vec::new();
    for n in 1..=5 {
        let chain: Vec<String> = a_even_expected(n).iter().map(ToString::to_string).collect();
        cases.push((A, 2 * n, chain.clone()));
        if n >= 2 {
            let mut d_odd = chain.clone();
            d_odd.push(format!("z1+x{}+x{}", n, n - 1));
            cases.push((D, 2 * n + 1, d_odd));
            let mut d_even = chain.clone();
            d_even.push(format!("z1+y{n}"));
            d_even.push(format!("z2+y{n}"));
            cases.push((D, 2 * n + 2, d_even));
        }
    }
    let with = |n: usize, extra: &[&str]| {
        let mut v: Vec<String> = a_even_expected(n).iter().map(ToString::to_string).collect();
        v.extend(extra.iter().map(ToString::to_string));
        v
    };
    cases.push((E, 6, with(2, &["y3+y2", "x3+x2+x1"])));
    cases.push((E, 7, with(3, &["z1+y3+y2+y1"])));
    cases.push((E, 8, with(3, &["y4+y3", "x4+x3+x2"])));

    for (f, r, expected) in &cases {
        let s = match ade_srs(*f, *r) {
            Ok(s) => s,
            Err(e) => {
                failures.push(format!("{f}{r}: {e}"));
                continue;
            }
        };
        let ty = s.space_type();
        let want: Vec<BitVec> = expected.iter().map(|t| parse_vector(ty, t)).collect();
        if s.decorations() != want.as_slice() {
            failures.push(format!("{f}{r}: decorations differ"));
        }
        let g = Graph::dynkin(*f, *r).unwrap();
        if ty != minimal_type(&g) {
            failures.push(format!("{f}{r}: type {ty}"));
        }
        if validate_srs(g, SympSpace::standard(ty), want).is_err() {
            failures.push(format!("{f}{r}: expected decorations do not validate"));
        }
        checked += 1;
    }
    // A_{2n+1}: no closed formula to compare against, so only validity and minimality.
    for r in [1, 3, 5, 7, 9, 11] {
        let s = ade_srs(A, r).unwrap();
        if !s.is_minimal() || s.space_type() != minimal_type(s.graph()) {
            failures.push(format!("A{r}: not the minimal root system"));
        }
        checked += 1;
    }
    report(
        2,
        "explicit decoration fidelity",
        &failures,
        &format!("{checked} diagrams"),
    );
}

// ---------------------------------------------------------------------------
// 3. Minimal uniqueness via extension
// ---------------------------------------------------------------------------

#[test]
fn criterion_3_minimal_uniqueness() {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let mut failures = Vec::new();
    let mut graphs = 0;
    let mut on_six = 0;
    for n in 1..=6 {
        for g in isomorphism_classes(n).into_iter().filter(Graph::is_connected) {
            graphs += 1;
            if n == 6 {
                on_six += 1;
            }
            let minimal = Srs::minimal(&g);
            for _ in 0..3 {
                let mut order: Vec<usize> = (0..n).collect();
                order.shuffle(&mut rng);
                let built = match build_by_extension(&g, &order) {
                    Ok(s) => s,
                    Err(e) => {
                        failures.push(format!("{g:?} order {order:?}: {e}"));
                        continue;
                    }
                };
                if built.space_type() != minimal_type(&g) {
                    failures.push(format!("{g:?} order {order:?}: type {}", built.space_type()));
                }
                if let Err(e) = check_iso(&built, &minimal) {
                    failures.push(format!("{g:?} order {order:?}: {e}"));
                }
            }
        }
    }
    if on_six != 112 {
        failures.push(format!("{on_six} connected classes on 6 nodes, expected 112"));
    }
    let elapsed = start.elapsed();
    if elapsed >= UNIQUENESS_BUDGET {
        failures.push(format!("took {elapsed:?}"));
    }
    report(
        3,
        "minimal root system uniqueness",
        &failures,
        &format!(
            "{graphs} connected graphs ({on_six} on 6 nodes) x 3 orders in {elapsed:.2?}"
        ),
    );
}

// ---------------------------------------------------------------------------
// 4. Restriction trichotomy
// ---------------------------------------------------------------------------

#[test]
fn criterion_4_restriction() {
    let mut failures = Vec::new();
    let mut cases = 0;
    let (mut nullvector, mut plane) = (0, 0);
    for n in 1..=5 {
        for g in all_labeled_graphs(n) {
            let full = minimal_type(&g);
            let s = Srs::minimal(&g);
            for v in 0..n {
                cases += 1;
                let keep: Vec<usize> = (0..n).filter(|&u| u != v).collect();
                let sub = g.induced_subgraph(&keep).unwrap();
                let t = minimal_type(&sub);
                if t == SpaceType::new(full.n, full.k.wrapping_sub(1)) && full.k > 0 {
                    nullvector += 1;
                } else if full.n > 0 && t == SpaceType::new(full.n - 1, full.k + 1) {
                    plane += 1;
                } else {
                    failures.push(format!("{g:?} minus {v}: {full} -> {t}"));
                }
                match s.restrict(&keep) {
                    Ok(r) if r.space_type() == t && r.is_minimal() => {}
                    Ok(r) => failures.push(format!("{g:?} minus {v}: restriction has type {}", r.space_type())),
                    Err(e) => failures.push(format!("{g:?} minus {v}: {e}")),
                }
            }
        }
    }
    report(
        4,
        "restriction trichotomy",
        &failures,
        &format!("{cases} deletions: {nullvector} lose a nullvector, {plane} lose a plane"),
    );
}

// ---------------------------------------------------------------------------
// 5. Quotient completeness against brute force
// ---------------------------------------------------------------------------

/// Every valid root system on `g` into a standard space, grouped by relation
/// set, with its type.
fn brute_force_classes(g: &Graph) -> BTreeMap<BTreeSet<u64>, (SpaceType, Vec<u64>)> {
    let n = g.node_count();
    let adj = adjacency_masks(g);
    let mut out = BTreeMap::new();
    for dim in 0..=n {
        for half in 0..=dim / 2 {
            let ty = SpaceType::new(half, dim - 2 * half);
            let gram = standard_gram(ty);
            let total = 1u64 << (dim * n);
            for code in 0..total {
                let deco: Vec<u64> = (0..n).map(|p| code >> (p * dim) & ((1 << dim) - 1)).collect();
                if mask_rank(&deco) != dim {
                    continue;
                }
                let ok = (0..n).all(|p| {
                    (p + 1..n).all(|q| pair(&gram, deco[p], deco[q]) == (adj[p] >> q & 1 == 1))
                });
                if ok {
                    out.entry(relation_set(&deco)).or_insert((ty, deco));
                }
            }
        }
    }
    out
}

#[test]
fn criterion_5_quotient_oracle() {
    let mut failures = Vec::new();
    let mut graphs = 0;
    let mut classes = 0;
    for n in 1..=4 {
        for g in all_labeled_graphs(n) {
            graphs += 1;
            let oracle = brute_force_classes(&g);
            let computed = enumerate_quotients(&g).unwrap();
            classes += computed.len();
            if oracle.len() != computed.len() {
                failures.push(format!("{g:?}: {} classes, oracle {}", computed.len(), oracle.len()));
                continue;
            }
            let mut seen = HashSet::new();
            for c in &computed {
                let relations = span_masks(n, &c.kernel);
                if !seen.insert(relations.clone()) {
                    failures.push(format!("{g:?}: repeated class"));
                }
                let deco: Vec<u64> = c.srs.decorations().iter().map(BitVec::to_mask).collect();
                if relation_set(&deco) != relations {
                    failures.push(format!("{g:?}: relations differ from kernel"));
                }
                match oracle.get(&relations) {
                    None => failures.push(format!("{g:?}: class missing from oracle")),
                    Some((ty, rep)) => {
                        if *ty != c.srs.space_type() {
                            failures.push(format!("{g:?}: type {} vs {ty}", c.srs.space_type()));
                        }
                        let rep = validate_srs(
                            g.clone(),
                            SympSpace::standard(*ty),
                            rep.iter().map(|&m| BitVec::from_mask(ty.dim(), m)).collect(),
                        )
                        .unwrap();
                        if let Err(e) = check_iso(&rep, &c.srs) {
                            failures.push(format!("{g:?}: {e}"));
                        }
                    }
                }
            }
        }
    }
    report(
        5,
        "quotient completeness oracle",
        &failures,
        &format!("{graphs} labelled graphs, {classes} classes"),
    );
}

// ---------------------------------------------------------------------------
// 6. Coclique bound
// ---------------------------------------------------------------------------

#[test]
fn criterion_6_coclique_bound() {
    let mut failures = Vec::new();
    let mut cases = 0;
    let mut check = |g: &Graph, equality: bool, failures: &mut Vec<String>| {
        cases += 1;
        let n = minimal_type(g).n;
        let gamma = coclique_number(g);
        let bound = srs_core::srs::coclique_bound_check(g).unwrap();
        if bound.n != n || bound.gamma != gamma || !bound.holds {
            failures.push(format!("{g:?}: library {bound:?}, oracle n={n} gamma={gamma}"));
        }
        if n + gamma > g.node_count() || (equality && n + gamma != g.node_count()) {
            failures.push(format!("{g:?}: n={n} gamma={gamma}"));
        }
    };
    for n in 0..=7 {
        for g in isomorphism_classes(n) {
            check(&g, false, &mut failures);
        }
    }
    // Every 8-node graph is a 7-node class with one node attached.
    for g in isomorphism_classes(7) {
        for mask in 0..1u64 << 7 {
            check(&g.with_new_node(&BitVec::from_mask(7, mask)), false, &mut failures);
        }
    }
    for n in 1..=12 {
        check(&Graph::empty(n), true, &mut failures);
    }
    for (f, r) in ade_diagrams(8, 8) {
        check(&Graph::dynkin(f, r).unwrap(), true, &mut failures);
    }
    for n in 1..=12 {
        let k = Graph::complete(n);
        check(&k, false, &mut failures);
        let want = SpaceType::new(n / 2, n % 2);
        let got = Srs::minimal(&k).space_type();
        if got != want {
            failures.push(format!("K{n}: type {got}, expected {want}"));
        }
    }
    report(
        6,
        "coclique bound",
        &failures,
        &format!("{cases} graphs"),
    );
}

// ---------------------------------------------------------------------------
// 7. Mixed completion
// ---------------------------------------------------------------------------

fn random_graph(rng: &mut ChaCha8Rng, n: usize) -> Graph {
    let edges: Vec<(usize, usize)> = (0..n)
        .flat_map(|j| (0..j).map(move |i| (i, j)))
        .filter(|_| rng.gen_bool(0.5))
        .collect();
    Graph::with_edges(n, &edges).unwrap()
}

#[test]
fn criterion_7_mixed_completion() {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let mut failures = Vec::new();
    let mut completions = 0;
    let mut degenerate = 0;
    for _ in 0..20 {
        let n = rng.gen_range(1..=10);
        let g = random_graph(&mut rng, n);
        let s = Srs::minimal(&g);
        let space = s.space();
        if !space.is_nondegenerate() {
            degenerate += 1;
        }
        for _ in 0..100 {
            completions += 1;
            let (proj, radform) = random_completion_choices(space, &mut rng);
            match mixed_completion(space, &proj, &radform) {
                Ok(m) => {
                    let rows: Vec<u64> = m.matrix().row_vectors().iter().map(BitVec::to_mask).collect();
                    if mask_rank(&rows) != n || !m.matrix().is_symmetric() {
                        failures.push(format!("{g:?}: completion degenerate"));
                    }
                }
                Err(e) => failures.push(format!("{g:?}: {e}")),
            }
        }
        let lambda = NeighborhoodIndicator::new(BitVec::from_mask(n, rng.gen_range(0..1u64 << n)));
        let mut results: Vec<Srs> = Vec::new();
        for _ in 0..10 {
            let (proj, radform) = random_completion_choices(space, &mut rng);
            match extend_minimal(&s, &lambda, Some((&proj, &radform))) {
                Ok((ext, _)) => results.push(ext),
                Err(e) => failures.push(format!("{g:?}: {e}")),
            }
        }
        let target = g.with_new_node(&lambda.lambda);
        for r in &results {
            if *r.graph() != target || r.space_type() != minimal_type(&target) {
                failures.push(format!("{g:?}: extension has the wrong graph or type"));
            }
            for other in &results {
                if let Err(e) = check_iso(r, other) {
                    failures.push(format!("{g:?}: extensions differ: {e}"));
                }
            }
        }
    }
    report(
        7,
        "mixed completion nondegeneracy",
        &failures,
        &format!("{completions} completions over 20 spaces ({degenerate} degenerate), 10 choices each"),
    );
}

// ---------------------------------------------------------------------------
// 8. Weyl action
// ---------------------------------------------------------------------------

fn mod2(dim: usize, b: &[i64]) -> BitVec {
    BitVec::from_ones(dim, b.iter().enumerate().filter(|(_, c)| *c % 2 != 0).map(|(i, _)| i))
}

fn closure_order(gens: &[BitMat]) -> usize {
    let d = gens[0].rows();
    let mut seen = HashSet::from([BitMat::identity(d)]);
    let mut frontier = vec![BitMat::identity(d)];
    while let Some(m) = frontier.pop() {
        for g in gens {
            let h = g.mul(&m).unwrap();
            if seen.insert(h.clone()) {
                frontier.push(h);
            }
        }
    }
    seen.len()
}

#[test]
fn criterion_8_weyl() {
    let start = Instant::now();
    let mut failures = Vec::new();
    let cases = [
        (A, 1, 2),
        (A, 2, 6),
        (A, 3, 12),
        (A, 4, 20),
        (B, 2, 8),
        (C, 3, 18),
        (G, 2, 12),
        (F, 4, 48),
        (D, 4, 24),
    ];
    let mut root_checks = 0;
    for (f, r, root_count) in cases {
        let datum = CartanDatum::of(f, r).unwrap();
        let rep = match weyl_rep(&datum) {
            Ok(rep) => rep,
            Err(e) => {
                failures.push(format!("{f}{r}: {e}"));
                continue;
            }
        };
        let gram = rep.space().gram();
        for (i, m) in rep.generators.iter().enumerate() {
            if gram.congruence(m).unwrap() != *gram {
                failures.push(format!("{f}{r}: generator {i} not symplectic"));
            }
        }
        // Parity graph: odd symmetrized pairing between distinct simple roots.
        for i in 0..r {
            for j in 0..r {
                let odd = i != j && datum.bilinear(i, j) % 2 != 0;
                if gram.get(i, j) != odd {
                    failures.push(format!("{f}{r}: form entry ({i},{j})"));
                }
            }
        }
        let rs = roots(&datum).unwrap();
        if rs.len() != root_count {
            failures.push(format!("{f}{r}: {} roots, expected {root_count}", rs.len()));
        }
        for b in &rs {
            if rep.extend(b) != mod2(r, b) {
                failures.push(format!("{f}{r}: extension of {b:?} is not reduction mod 2"));
            }
            for (i, m) in rep.generators.iter().enumerate() {
                root_checks += 1;
                let image = datum.reflect(i, b);
                if m.mul_vec(&mod2(r, b)).unwrap() != mod2(r, &image) {
                    failures.push(format!("{f}{r}: s{i} does not intertwine on {b:?}"));
                }
            }
        }
        if (f, r) == (A, 2) {
            let order = group_order(&rep).unwrap();
            let oracle = closure_order(&rep.generators);
            if order != 6 || oracle != 6 {
                failures.push(format!("A2 image order {order}, oracle {oracle}"));
            }
        }
    }
    let elapsed = start.elapsed();
    if elapsed >= WEYL_BUDGET {
        failures.push(format!("took {elapsed:?}"));
    }
    report(
        8,
        "Weyl action",
        &failures,
        &format!("{} data, {root_checks} root checks in {elapsed:.2?}", cases.len()),
    );
}

// ---------------------------------------------------------------------------
// 9. Group realization
// ---------------------------------------------------------------------------

fn subgroup_size(grp: &CocycleGroup, gens: &[GroupElement]) -> usize {
    let mut seen = HashSet::from([grp.identity()]);
    let mut frontier = vec![grp.identity()];
    while let Some(x) = frontier.pop() {
        for g in gens {
            let y = grp.multiply(&x, g).unwrap();
            if seen.insert(y.clone()) {
                frontier.push(y);
            }
        }
    }
    seen.len()
}

fn order_four_count(grp: &CocycleGroup) -> usize {
    grp.elements()
        .unwrap()
        .iter()
        .filter(|g| {
            let sq = grp.multiply(g, g).unwrap();
            sq != grp.identity()
        })
        .count()
}

#[test]
fn criterion_9_group_realization() {
    let mut failures = Vec::new();
    let mut pairs = 0usize;
    let mut groups = 0;
    for (f, r) in ade_diagrams(8, 8) {
        let s = ade_srs(f, r).unwrap();
        let grp = make_group(s.space());
        if grp.order_log2() > 9 {
            continue;
        }
        groups += 1;
        let elems = grp.elements().unwrap();
        if elems.len() != 1 << grp.order_log2() {
            failures.push(format!("{f}{r}: {} elements", elems.len()));
        }
        for g in &elems {
            for h in &elems {
                pairs += 1;
                let c = grp.commutator(g, h).unwrap();
                let want = GroupElement::new(BitVec::zeros(s.space().dim()), s.space().pair(&g.vec, &h.vec));
                if c != want {
                    failures.push(format!("{f}{r}: [{g},{h}] = {c}"));
                }
            }
        }
        let lifts = lift_decoration(&s, &grp).unwrap();
        if commutativity_graph(&grp, &lifts).unwrap().adjacency() != s.graph().adjacency() {
            failures.push(format!("{f}{r}: commutativity graph differs"));
        }
        for p in 0..lifts.len() {
            for q in 0..lifts.len() {
                let commute = grp.commutator(&lifts[p], &lifts[q]).unwrap() == grp.identity();
                if commute == s.graph().has_edge(p, q) {
                    failures.push(format!("{f}{r}: lifts {p},{q}"));
                }
            }
        }
        // Burnside against subgroup closure.
        let full = 1usize << grp.order_log2();
        let generates = subgroup_size(&grp, &lifts) == full;
        let irredundant = (0..lifts.len()).all(|i| {
            let rest: Vec<_> = lifts.iter().enumerate().filter(|(j, _)| *j != i).map(|(_, g)| g.clone()).collect();
            subgroup_size(&grp, &rest) < full
        });
        let b = burnside_check(&grp, &lifts).unwrap();
        if b.generates != generates || b.minimal != (generates && irredundant) {
            failures.push(format!("{f}{r}: burnside {b:?}, closure generates={generates} irredundant={irredundant}"));
        }
        if s.graph().edge_count() > 0 && !b.minimal {
            failures.push(format!("{f}{r}: minimal lifts are not a minimal generating set"));
        }
        // Lifts of a proper quotient generate but are redundant.
        for c in enumerate_quotients(s.graph()).unwrap().iter().filter(|c| !c.kernel.is_empty()) {
            let qgrp = make_group(c.srs.space());
            let qlifts = lift_decoration(&c.srs, &qgrp).unwrap();
            let qb = burnside_check(&qgrp, &qlifts).unwrap();
            let qgen = subgroup_size(&qgrp, &qlifts) == 1 << qgrp.order_log2();
            if qb.generates != qgen || qb.minimal || (s.graph().edge_count() > 0 && !qgen) {
                failures.push(format!("{f}{r}: quotient {} lifts {qb:?}", c.srs.space_type()));
            }
        }
    }
    let d4 = make_group(&SympSpace::standard(SpaceType::new(1, 0)));
    let q8 = d4.perturbed(&BitMat::identity(2)).unwrap();
    let (plus, minus) = (order_four_count(&d4), order_four_count(&q8));
    if plus != 2 || extraspecial_sign(&d4).unwrap() != ExtraspecialSign::Plus {
        failures.push(format!("canonical (1,0): {plus} elements of order 4"));
    }
    if minus != 6 || extraspecial_sign(&q8).unwrap() != ExtraspecialSign::Minus {
        failures.push(format!("perturbed (1,0): {minus} elements of order 4"));
    }
    report(
        9,
        "group realization",
        &failures,
        &format!("{groups} groups, {pairs} commutators, D4 {plus} vs Q8 {minus} order-4 elements"),
    );
}
