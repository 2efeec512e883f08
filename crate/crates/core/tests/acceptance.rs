//! Acceptance suite: one PASS/FAIL line per criterion, with pinned time budgets.
//! All comparisons are exact.

use std::collections::{BTreeSet, HashMap, VecDeque};
use std::time::{Duration, Instant};

use cellulo_core::asph::AsphBasis;
use cellulo_core::cells::{
    build_cell_graph, cells_for_config, cells_from_graph, cells_missing_double_coset_reps,
    check_omega_stability, check_two_sided_vs_antispherical, check_w_restriction, compute_cells, Bases,
    CellGraph, CellPartition, CellSide, GraphSpec,
};
use cellulo_core::glcells::{
    enumerate_multipartitions, frobenius_projective_bound, orbit_count, scaling_depth, semisimple_rank,
    table1, zero_orbit_sigma,
};
use cellulo_core::hecke::{BarCache, KlTable};
use cellulo_core::{Config, LaurentPoly, RootDatum, Weight, WeylElt, WeylGroup};
use num_bigint::BigInt;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

type Outcome = Result<String, String>;

fn group(label: &str) -> WeylGroup {
    WeylGroup::new(RootDatum::from_selector(label).expect("datum")).expect("group")
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

/// Word length by breadth-first search over the Coxeter generators.
fn bfs_lengths(g: &WeylGroup, depth: usize) -> HashMap<WeylElt, usize> {
    let mut dist = HashMap::from([(g.identity(), 0)]);
    let mut queue = VecDeque::from([g.identity()]);
    while let Some(w) = queue.pop_front() {
        let d = dist[&w];
        if d == depth {
            continue;
        }
        for s in 0..g.coxeter_generators().len() {
            let ws = g.times_generator(&w, s);
            if !dist.contains_key(&ws) {
                dist.insert(ws.clone(), d + 1);
                queue.push_back(ws);
            }
        }
    }
    dist
}

fn c1_length_oracle() -> Outcome {
    let mut checked = 0;
    for label in ["A1", "A2", "B2"] {
        let g = group(label);
        let dist = bfs_lengths(&g, 8);
        for (w, d) in &dist {
            ensure(g.length(w) == *d, || format!("{label}: length {} vs word length {d}", g.length(w)))?;
        }
        let ball: BTreeSet<WeylElt> = g.ball(8).into_iter().collect();
        let bfs: BTreeSet<WeylElt> = dist.into_keys().collect();
        ensure(ball == bfs, || format!("{label}: ball(8) differs from the BFS ball"))?;
        checked += ball.len();
    }
    Ok(format!("{checked} elements"))
}

fn c2_dihedral() -> Outcome {
    let g = group("A1");
    let table = KlTable::<BigInt>::build(&g, 12);
    let mut pairs = 0;
    for w in table.elements() {
        let lw = g.length(w);
        // Bruhat order on the infinite dihedral group: x <= w iff x = w or l(x) < l(w)
        for x in table.elements() {
            let lx = g.length(x);
            let expected = if x == w || lx < lw {
                pairs += 1;
                LaurentPoly::v_pow((lw - lx) as i32)
            } else {
                LaurentPoly::zero()
            };
            let got = table.get(w).expect("entry").coeff(x);
            ensure(got == expected, || format!("h(x, w) = {got}, expected {expected}"))?;
        }
    }
    Ok(format!("{pairs} pairs"))
}

fn c3_characterization() -> Outcome {
    let mut count = 0;
    for (label, radius) in [("A1", 16), ("A2", 10)] {
        let g = group(label);
        let table = KlTable::<BigInt>::build(&g, radius);
        let asph = AsphBasis::from_projection(&g, &table).map_err(|e| e.to_string())?;
        let mut cache = BarCache::new();
        for w in table.elements() {
            let c = table.get(w).expect("entry");
            ensure(c.is_bar_invariant(&g, &mut cache), || format!("{label}: C_w not bar-invariant"))?;
            for (x, p) in c.terms() {
                let ok = if x == w {
                    p.is_one()
                } else {
                    p.in_positive_degrees() && p.has_nonnegative_coeffs()
                };
                ensure(ok, || format!("{label}: bad coefficient {p} in C_w"))?;
            }
            count += 1;
        }
        for w in asph.elements() {
            let n = asph.get(w).expect("entry");
            ensure(n.bar(&g, &mut cache) == *n, || format!("{label}: N_w not bar-invariant"))?;
            for (x, p) in n.terms() {
                let ok = if x == w {
                    p.is_one()
                } else {
                    p.in_positive_degrees() && p.has_nonnegative_coeffs()
                };
                ensure(ok, || format!("{label}: bad coefficient {p} in N_w"))?;
            }
            count += 1;
        }
    }
    Ok(format!("{count} basis elements"))
}

fn asph_cells(label: &str, radius: usize) -> Result<(WeylGroup, CellPartition), String> {
    let g = group(label);
    let cfg = Config::new(i64::from(g.datum().coxeter_number()) + 1, radius);
    let p = cells_for_config(&g, &cfg, CellSide::Antispherical).map_err(|e| e.to_string())?;
    Ok((g, p))
}

fn c4_orbit_counts() -> Outcome {
    let mut summary = Vec::new();
    for (label, radius) in [("A1", 16), ("A2", 12), ("B2", 20)] {
        let (g, p) = asph_cells(label, radius)?;
        let orbits = orbit_count(g.datum()).map_err(|e| e.to_string())? as usize;
        let complete = p.num_complete();
        let unmatched = cells_missing_double_coset_reps(&g, &p);
        ensure(unmatched.is_empty(), || format!("{label}: complete cells {unmatched:?} have no double coset representative"))?;
        if label == "B2" {
            ensure(complete <= orbits, || format!("B2: {complete} complete cells exceed {orbits} orbits"))?;
        } else {
            ensure(complete == orbits, || format!("{label}: {complete} complete cells, {orbits} orbits"))?;
        }
        summary.push(format!("{label} r{radius}: {complete}/{orbits}"));
    }
    Ok(summary.join(", "))
}

fn c5_bijection() -> Outcome {
    let mut summary = Vec::new();
    for (label, radius) in [("A1", 12), ("A2", 10)] {
        let g = group(label);
        let cfg = Config::new(i64::from(g.datum().coxeter_number()) + 1, radius);
        let two = cells_for_config(&g, &cfg, CellSide::TwoSided).map_err(|e| e.to_string())?;
        let asph = cells_for_config(&g, &cfg, CellSide::Antispherical).map_err(|e| e.to_string())?;
        let report = check_two_sided_vs_antispherical(&g, &two, &asph);
        ensure(report.perfect, || format!("{label}: {:?}", report.problems))?;
        ensure(!report.pairs.is_empty(), || format!("{label}: no complete cells"))?;
        summary.push(format!("{label}: {} pairs", report.pairs.len()));
    }
    Ok(summary.join(", "))
}

fn c6_omega_and_restriction() -> Outcome {
    let mut summary = Vec::new();
    for (label, radius) in [("A1", 12), ("A2", 10)] {
        let g = group(label);
        let margin = 2;
        let bases = Bases::<BigInt>::build(&g, radius + 2 * margin + 1).map_err(|e| e.to_string())?;
        let ext = compute_cells(&g, &bases, &GraphSpec::extended(&g, CellSide::Antispherical, radius, 1), margin)
            .map_err(|e| e.to_string())?;
        let inner = compute_cells(&g, &bases, &GraphSpec::coxeter_only(&g, CellSide::Antispherical, radius), margin)
            .map_err(|e| e.to_string())?;
        let unstable = check_omega_stability(&g, &ext, &g.omega_set(1));
        ensure(unstable.is_empty(), || format!("{label}: {} Omega-stability violations", unstable.len()))?;
        let disagree = check_w_restriction(&g, &ext, &inner);
        ensure(disagree.is_empty(), || format!("{label}: {} restriction disagreements", disagree.len()))?;
        summary.push(format!("{label}: {} extended, {} inner cells", ext.cells.len(), inner.cells.len()));
    }
    Ok(summary.join(", "))
}

fn c7_table1() -> Outcome {
    let golden = [
        (2, include_str!("../golden/gl2.txt")),
        (3, include_str!("../golden/gl3.txt")),
        (4, include_str!("../golden/gl4.txt")),
    ];
    for (n, expected) in golden {
        let got = table1(&[n], 4);
        ensure(got == expected, || format!("GL_{n} output differs from golden file"))?;
    }
    Ok("GL_2, GL_3, GL_4 byte-exact".into())
}

/// Random `mu` with `mu + 2 rho` antidominant in the coordinates of `GL_n`.
fn random_regime_weight(rng: &mut StdRng, n: usize) -> Weight<i64> {
    let mut x = rng.gen_range(-6..=6);
    let shifted: Vec<i64> = (0..n)
        .map(|k| {
            if k > 0 {
                x += rng.gen_range(0..=4);
            }
            x
        })
        .collect();
    // 2 rho = (n-1, n-3, ..., 1-n)
    Weight(
        shifted
            .iter()
            .enumerate()
            .map(|(k, s)| s - (n as i64 - 1 - 2 * k as i64))
            .collect(),
    )
}

fn c8_zero_orbit() -> Outcome {
    let mut rng = StdRng::seed_from_u64(0x5eed_2024);
    let groups = [group("GL:2"), group("GL:3")];
    let mut deep = 0;
    for trial in 0..500 {
        let g = &groups[trial % 2];
        let n = g.rank();
        let ell: i64 = if rng.gen_bool(0.5) { 5 } else { 7 };
        let cfg = Config::new(ell, 0);
        let m = rng.gen_range(0..=2u32);
        let base = random_regime_weight(&mut rng, n);
        let mu = Weight(base.0.iter().map(|x| x * ell.pow(m)).collect::<Vec<_>>());

        // w_mu . 0 against ell * reverse(mu) - 2 rho
        let nu = g.dot_action(&g.min_coset_rep(&mu), &Weight::zero(n), ell);
        let expected: Vec<i64> = (0..n)
            .map(|k| ell * mu.0[n - 1 - k] - (n as i64 - 1 - 2 * k as i64))
            .collect();
        ensure(nu.0 == expected, || format!("w_mu . 0 = {:?}, expected {expected:?} for mu = {:?}", nu.0, mu.0))?;
        let sigma = zero_orbit_sigma(g, &mu.scale(&ell)).map_err(|e| e.to_string())?;
        ensure(sigma == nu, || "zero-orbit formula disagrees with the dot action".into())?;

        let depth = scaling_depth(g.datum(), &mu, &cfg);
        ensure(depth >= m as usize, || format!("scaling depth {depth} below constructed depth {m}"))?;
        if depth >= 1 {
            let ok = frobenius_projective_bound(g.datum(), &nu, depth as u32, &cfg).map_err(|e| e.to_string())?;
            ensure(ok, || format!("projectivity bound fails at depth {depth} for mu = {:?}", mu.0))?;
            deep += 1;
        }
    }
    Ok(format!("500 weights, {deep} with positive depth"))
}

fn compositions(total: usize) -> Vec<Vec<usize>> {
    if total == 0 {
        return vec![Vec::new()];
    }
    (1..=total)
        .flat_map(|first| {
            compositions(total - first).into_iter().map(move |mut rest| {
                rest.insert(0, first);
                rest
            })
        })
        .collect()
}

fn c9_monotonicity() -> Outcome {
    let mut count = 0;
    for total in 1..=6 {
        for a in compositions(total) {
            for pi in enumerate_multipartitions(&a) {
                let r = semisimple_rank(&pi.mult());
                let top = semisimple_rank(&a);
                ensure(r <= top, || format!("{pi}: rank {r} exceeds {top}"))?;
                ensure((r == top) == pi.is_zero_orbit(), || format!("{pi}: equality case wrong"))?;
                count += 1;
            }
        }
    }
    Ok(format!("{count} multipartitions"))
}

/// Mutual-reachability classes by Floyd-Warshall.
fn naive_classes(graph: &CellGraph) -> BTreeSet<BTreeSet<WeylElt>> {
    let n = graph.len();
    let mut r = vec![vec![false; n]; n];
    for u in 0..n {
        r[u][u] = true;
        for &x in &graph.edges[u] {
            r[u][x] = true;
        }
    }
    for k in 0..n {
        for i in 0..n {
            if r[i][k] {
                for j in 0..n {
                    if r[k][j] {
                        r[i][j] = true;
                    }
                }
            }
        }
    }
    (0..n)
        .map(|i| (0..n).filter(|&j| r[i][j] && r[j][i]).map(|j| graph.vertices[j].clone()).collect())
        .collect()
}

fn c10_redundancy() -> Outcome {
    let mut compared = 0;
    for (label, radius) in [("A1", 16), ("A2", 10), ("B2", 9), ("G2", 9), ("GL:3", 7)] {
        let g = group(label);
        let table = KlTable::<BigInt>::build(&g, radius);
        let proj = AsphBasis::from_projection(&g, &table).map_err(|e| e.to_string())?;
        let rec = AsphBasis::<BigInt>::by_recursion(&g, radius);
        ensure(proj.elements() == rec.elements(), || format!("{label}: element lists differ"))?;
        for w in proj.elements() {
            ensure(proj.get(w) == rec.get(w), || format!("{label}: N_w differs"))?;
            compared += 1;
        }
    }
    let mut graphs = 0;
    for label in ["A1", "A2", "B2"] {
        let g = group(label);
        let bases = Bases::<BigInt>::build(&g, 9).map_err(|e| e.to_string())?;
        for side in [CellSide::Left, CellSide::Right, CellSide::TwoSided, CellSide::Antispherical] {
            for spec in [GraphSpec::extended(&g, side, 8, 1), GraphSpec::coxeter_only(&g, side, 8)] {
                let graph = build_cell_graph(&g, &bases, &spec).map_err(|e| e.to_string())?;
                let fast: BTreeSet<BTreeSet<WeylElt>> = cells_from_graph(&graph)
                    .cells
                    .into_iter()
                    .map(|c| c.members.into_iter().collect())
                    .collect();
                ensure(fast == naive_classes(&graph), || format!("{label} {}: SCCs differ", side.as_str()))?;
                graphs += 1;
            }
        }
    }
    Ok(format!("{compared} antispherical elements, {graphs} graphs"))
}

fn main() {
    let criteria: [(&str, u64, fn() -> Outcome); 10] = [
        ("length formula equals word length (A1, A2, B2, depth 8)", 10, c1_length_oracle),
        ("dihedral closed form h_{x,w} = v^(l(w)-l(x)) (A1, length 12)", 5, c2_dihedral),
        ("canonical bases bar-invariant with positive off-diagonal (A1 r16, A2 r10)", 120, c3_characterization),
        ("antispherical cell counts equal nilpotent orbit counts (A1, A2, B2)", 120, c4_orbit_counts),
        ("two-sided and antispherical cells in bijection (A1, A2)", 120, c5_bijection),
        ("Omega-stability and W-restriction agreement (A1, A2)", 120, c6_omega_and_restriction),
        ("GL weight cell tables match golden files", 1, c7_table1),
        ("zero-orbit formula and scaling chain (500 random weights)", 30, c8_zero_orbit),
        ("multipartition semisimple rank monotonicity (|a| <= 6)", 1, c9_monotonicity),
        ("projection and recursion bases agree; SCC equals naive reachability", 120, c10_redundancy),
    ];
    let mut failures = 0;
    for (k, (name, budget, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = run();
        let elapsed = start.elapsed();
        let budget = Duration::from_secs(*budget);
        let (status, detail) = match outcome {
            Ok(detail) if elapsed <= budget => ("PASS", detail),
            Ok(detail) => ("FAIL", format!("{detail}; over time budget")),
            Err(e) => ("FAIL", e),
        };
        if status == "FAIL" {
            failures += 1;
        }
        println!(
            "{status} [{}] {name}: {detail} ({:.2} s, budget {} s)",
            k + 1,
            elapsed.as_secs_f64(),
            budget.as_secs()
        );
    }
    if failures > 0 {
        println!("{failures} criteria failed");
        std::process::exit(1);
    }
}
