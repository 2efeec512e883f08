//! Cells on truncated balls.
//!
//! A cell graph has a vertex for each basis index in the ball and an edge
//! `u -> x` whenever `C_x` (or `N_x`) occurs in the canonical expansion of
//! `C_u g` (or `N_u g`) for an acting generator `g`: a canonical generator
//! `C_s` or some `H_omega`. The reachability closure of `u` is the index set
//! of the principal based ideal (or submodule) generated by `C_u`, so cells
//! are strongly connected components.
//!
//! Truncation: the cells reported on the ball of radius `R` are the traces on
//! it of the components of the graph on radius `R + margin`. Enlarging the ball
//! can only merge such traces, never split them, so a trace is reported
//! complete when it is unchanged on radius `R + 2 margin`. A vertex whose
//! products leave the ball is a frontier vertex; cells containing one are
//! flagged separately.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use num_bigint::BigInt;
use petgraph::algo::tarjan_scc;
use petgraph::graph::{DiGraph, NodeIndex};
use rayon::prelude::*;
use serde::Serialize;

use crate::asph::AsphBasis;
use crate::hecke::{CanonicalBasis, KlTable};
use crate::laurent::Laurent;
use crate::rootdata::Config;
use crate::scalar::Coefficient;
use crate::weyl::{format_elt, WeylElt, WeylGroup};
use crate::Result;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum CellSide {
    Left,
    Right,
    TwoSided,
    Antispherical,
}

impl CellSide {
    pub fn as_str(self) -> &'static str {
        match self {
            CellSide::Left => "left",
            CellSide::Right => "right",
            CellSide::TwoSided => "two-sided",
            CellSide::Antispherical => "antispherical",
        }
    }
}

impl std::str::FromStr for CellSide {
    type Err = crate::Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "left" => Ok(CellSide::Left),
            "right" => Ok(CellSide::Right),
            "two-sided" | "two_sided" | "twosided" => Ok(CellSide::TwoSided),
            "antispherical" | "asph" => Ok(CellSide::Antispherical),
            _ => Err(crate::Error::Parse(format!("unknown side `{s}`"))),
        }
    }
}

/// Canonical bases needed to build cell graphs.
pub struct Bases<C: Coefficient> {
    pub hecke: KlTable<C>,
    pub asph: AsphBasis<C>,
}

impl<C: Coefficient> Bases<C> {
    /// Tables covering `W`-elements up to `radius`.
    pub fn build(g: &WeylGroup, radius: usize) -> Result<Self> {
        let hecke = KlTable::build(g, radius);
        let asph = AsphBasis::from_projection(g, &hecke)?;
        Ok(Bases { hecke, asph })
    }
}

/// Which generators act and which vertices are used.
#[derive(Clone, Debug)]
pub struct GraphSpec {
    pub side: CellSide,
    pub radius: usize,
    /// Right translates of the `W`-ball; `[e]` restricts to `W`.
    pub omega_translates: Vec<WeylElt>,
    /// Length-zero elements acting as generators; empty restricts to `W`.
    pub omega_generators: Vec<WeylElt>,
}

impl GraphSpec {
    /// Vertices `ball(radius) * Omega_B`, generators `Omega` generators and their inverses.
    pub fn extended(g: &WeylGroup, side: CellSide, radius: usize, omega_bound: usize) -> Self {
        let mut gens: Vec<WeylElt> = g
            .omega_generators()
            .iter()
            .flat_map(|o| [o.elt.clone(), g.inverse(&o.elt)])
            .collect();
        gens.sort();
        gens.dedup();
        GraphSpec {
            side,
            radius,
            omega_translates: g.omega_set(omega_bound),
            omega_generators: gens,
        }
    }

    /// Vertices `ball(radius)` in `W`, generators `C_s` only.
    pub fn coxeter_only(g: &WeylGroup, side: CellSide, radius: usize) -> Self {
        GraphSpec {
            side,
            radius,
            omega_translates: vec![g.identity()],
            omega_generators: Vec::new(),
        }
    }
}

#[derive(Clone, Debug)]
pub struct CellGraph {
    pub side: CellSide,
    pub radius: usize,
    /// Sorted by `(length, element)`.
    pub vertices: Vec<WeylElt>,
    pub lengths: Vec<usize>,
    pub index: HashMap<WeylElt, usize>,
    /// Sorted, deduplicated out-neighbours.
    pub edges: Vec<Vec<usize>>,
    /// Vertices with a product leaving the vertex set.
    pub frontier: Vec<bool>,
}

impl CellGraph {
    pub fn from_edges(side: CellSide, radius: usize, vertices: Vec<WeylElt>, lengths: Vec<usize>, edges: Vec<Vec<usize>>, frontier: Vec<bool>) -> Self {
        let index = vertices.iter().cloned().enumerate().map(|(k, v)| (v, k)).collect();
        CellGraph {
            side,
            radius,
            vertices,
            lengths,
            index,
            edges,
            frontier,
        }
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn has_edge(&self, u: &WeylElt, x: &WeylElt) -> bool {
        match (self.index.get(u), self.index.get(x)) {
            (Some(&a), Some(&b)) => self.edges[a].binary_search(&b).is_ok(),
            _ => false,
        }
    }

    /// Induced subgraph on vertices of length at most `radius`; edges leaving it mark the frontier.
    pub fn restrict(&self, radius: usize) -> CellGraph {
        let keep: Vec<usize> = (0..self.len()).filter(|&k| self.lengths[k] <= radius).collect();
        let new_index: HashMap<usize, usize> = keep.iter().enumerate().map(|(n, &o)| (o, n)).collect();
        let mut edges = Vec::with_capacity(keep.len());
        let mut frontier = Vec::with_capacity(keep.len());
        for &o in &keep {
            let mut out = Vec::new();
            let mut escapes = self.frontier[o];
            for &t in &self.edges[o] {
                match new_index.get(&t) {
                    Some(&n) => out.push(n),
                    None => escapes = true,
                }
            }
            edges.push(out);
            frontier.push(escapes);
        }
        CellGraph::from_edges(
            self.side,
            radius,
            keep.iter().map(|&o| self.vertices[o].clone()).collect(),
            keep.iter().map(|&o| self.lengths[o]).collect(),
            edges,
            frontier,
        )
    }

    /// Strongly connected components as sorted vertex-index lists.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let mut pg: DiGraph<(), ()> = DiGraph::with_capacity(self.len(), 0);
        let nodes: Vec<NodeIndex> = (0..self.len()).map(|_| pg.add_node(())).collect();
        for (u, outs) in self.edges.iter().enumerate() {
            for &x in outs {
                pg.add_edge(nodes[u], nodes[x], ());
            }
        }
        let mut comps: Vec<Vec<usize>> = tarjan_scc(&pg)
            .into_iter()
            .map(|c| {
                let mut v: Vec<usize> = c.into_iter().map(|n| n.index()).collect();
                v.sort_unstable();
                v
            })
            .collect();
        comps.sort();
        comps
    }
}

/// Builds the cell graph for `spec` from canonical bases covering radius `spec.radius + 1`.
pub fn build_cell_graph<C: Coefficient>(
    g: &WeylGroup,
    bases: &Bases<C>,
    spec: &GraphSpec,
) -> Result<CellGraph> {
    let mut vertices: Vec<(usize, WeylElt)> = g
        .ball_ext(spec.radius, &spec.omega_translates)
        .into_iter()
        .filter(|w| spec.side != CellSide::Antispherical || g.in_fw(w))
        .map(|w| (g.length(&w), w))
        .collect();
    vertices.sort();
    let lengths: Vec<usize> = vertices.iter().map(|v| v.0).collect();
    let vertices: Vec<WeylElt> = vertices.into_iter().map(|v| v.1).collect();
    let index: HashMap<WeylElt, usize> = vertices.iter().cloned().enumerate().map(|(k, v)| (v, k)).collect();
    let ngen = g.coxeter_generators().len();

    let rows: Vec<(Vec<usize>, bool)> = vertices
        .par_iter()
        .map(|u| -> Result<(Vec<usize>, bool)> {
            let mut targets: BTreeSet<WeylElt> = BTreeSet::new();
            let right = matches!(spec.side, CellSide::Right | CellSide::TwoSided);
            let left = matches!(spec.side, CellSide::Left | CellSide::TwoSided);
            if spec.side == CellSide::Antispherical {
                let nu = bases.asph.canonical(g, u)?;
                for s in 0..ngen {
                    let prod = nu.times_canonical_generator(g, s);
                    targets.extend(nonzero_keys(bases.asph.expand(g, &prod)?));
                }
                for o in &spec.omega_generators {
                    targets.insert(g.multiply(u, o));
                }
            } else {
                let cu = bases.hecke.canonical(g, u)?;
                for s in 0..ngen {
                    if right {
                        let prod = cu.times_canonical_generator(g, s);
                        targets.extend(nonzero_keys(bases.hecke.expand(g, &prod)?));
                    }
                    if left {
                        let prod = cu.canonical_generator_times(g, s);
                        targets.extend(nonzero_keys(bases.hecke.expand(g, &prod)?));
                    }
                }
                for o in &spec.omega_generators {
                    if right {
                        targets.insert(g.multiply(u, o));
                    }
                    if left {
                        targets.insert(g.multiply(o, u));
                    }
                }
            }
            let mut out = Vec::with_capacity(targets.len());
            let mut escapes = false;
            for t in targets {
                match index.get(&t) {
                    Some(&k) => out.push(k),
                    None => escapes = true,
                }
            }
            out.sort_unstable();
            Ok((out, escapes))
        })
        .collect::<Result<_>>()?;
    let (edges, frontier) = rows.into_iter().unzip();
    Ok(CellGraph {
        side: spec.side,
        radius: spec.radius,
        vertices,
        lengths,
        index,
        edges,
        frontier,
    })
}

fn nonzero_keys<C: Coefficient>(m: BTreeMap<WeylElt, Laurent<C>>) -> impl Iterator<Item = WeylElt> {
    m.into_iter().filter(|(_, p)| !p.is_zero()).map(|(x, _)| x)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cell {
    /// Sorted by `(length, element)`.
    pub members: Vec<WeylElt>,
    pub complete: bool,
    /// Some member has a product leaving the ball.
    pub touches_frontier: bool,
}

#[derive(Clone, Debug)]
pub struct CellPartition {
    pub side: CellSide,
    pub radius: usize,
    pub margin: usize,
    /// Sorted by `(minimal member length, minimal member)`.
    pub cells: Vec<Cell>,
    /// Pairs `(i, j)`, `i != j`, with cell `j` reachable from cell `i`.
    pub order: Vec<(usize, usize)>,
    cell_of: HashMap<WeylElt, usize>,
}

impl CellPartition {
    pub fn cell_of(&self, w: &WeylElt) -> Option<usize> {
        self.cell_of.get(w).copied()
    }

    pub fn complete_cells(&self) -> impl Iterator<Item = (usize, &Cell)> {
        self.cells.iter().enumerate().filter(|(_, c)| c.complete)
    }

    pub fn num_complete(&self) -> usize {
        self.complete_cells().count()
    }

    pub fn members(&self) -> impl Iterator<Item = &WeylElt> {
        self.cells.iter().flat_map(|c| c.members.iter())
    }
}

/// Partition of a single graph into components; a component is complete iff
/// no member is a frontier vertex.
pub fn cells_from_graph(graph: &CellGraph) -> CellPartition {
    let comps = graph.components();
    let complete: Vec<bool> = comps
        .iter()
        .map(|c| c.iter().all(|&k| !graph.frontier[k]))
        .collect();
    let mut comp_of = vec![0usize; graph.len()];
    for (c, members) in comps.iter().enumerate() {
        for &k in members {
            comp_of[k] = c;
        }
    }
    let reach = quotient_reachability(graph, &comp_of, comps.len());
    assemble(graph, comps, complete, &reach, 0)
}

/// `reach[i]` = classes reachable from class `i` (excluding `i`) in the quotient graph.
fn quotient_reachability(graph: &CellGraph, class_of: &[usize], n: usize) -> Vec<BTreeSet<usize>> {
    let mut succ: Vec<BTreeSet<usize>> = vec![BTreeSet::new(); n];
    for (u, outs) in graph.edges.iter().enumerate() {
        for &x in outs {
            if class_of[u] != class_of[x] {
                succ[class_of[u]].insert(class_of[x]);
            }
        }
    }
    (0..n)
        .map(|start| {
            let mut seen = BTreeSet::new();
            let mut stack: Vec<usize> = succ[start].iter().copied().collect();
            while let Some(c) = stack.pop() {
                if seen.insert(c) {
                    stack.extend(succ[c].iter().copied());
                }
            }
            seen.remove(&start);
            seen
        })
        .collect()
}

/// Builds a partition of `graph`'s vertices from classes (sorted index lists)
/// and reachability between them.
fn assemble(
    graph: &CellGraph,
    classes: Vec<Vec<usize>>,
    complete: Vec<bool>,
    reach: &[BTreeSet<usize>],
    margin: usize,
) -> CellPartition {
    let mut order_idx: Vec<usize> = (0..classes.len()).collect();
    // members are vertex indices, already sorted by (length, element)
    order_idx.sort_by_key(|&c| classes[c][0]);
    let mut renumber = vec![0usize; classes.len()];
    for (new, &old) in order_idx.iter().enumerate() {
        renumber[old] = new;
    }
    let cells: Vec<Cell> = order_idx
        .iter()
        .map(|&old| Cell {
            members: classes[old].iter().map(|&k| graph.vertices[k].clone()).collect(),
            complete: complete[old],
            touches_frontier: classes[old].iter().any(|&k| graph.frontier[k]),
        })
        .collect();
    let mut order: Vec<(usize, usize)> = order_idx
        .iter()
        .flat_map(|&old| reach[old].iter().map(move |&t| (old, t)))
        .map(|(a, b)| (renumber[a], renumber[b]))
        .collect();
    order.sort_unstable();
    let mut cell_of = HashMap::new();
    for (c, cell) in cells.iter().enumerate() {
        for w in &cell.members {
            cell_of.insert(w.clone(), c);
        }
    }
    CellPartition {
        side: graph.side,
        radius: graph.radius,
        margin,
        cells,
        order,
        cell_of,
    }
}

/// Traces on the first `n_small` vertices (a length-truncation prefix) of the
/// components of `graph`, as sorted index lists, with the component id of each trace.
fn traces(graph: &CellGraph, n_small: usize) -> (Vec<Vec<usize>>, Vec<usize>) {
    let mut by_comp: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    let comps = graph.components();
    let mut comp_of = vec![0usize; graph.len()];
    for (c, members) in comps.iter().enumerate() {
        for &k in members {
            comp_of[k] = c;
        }
    }
    for k in 0..n_small {
        by_comp.entry(comp_of[k]).or_default().push(k);
    }
    let ids = by_comp.keys().copied().collect();
    (by_comp.into_values().collect(), ids)
}

/// Cells of the ball of radius `spec.radius`: traces of the components of the
/// graph on radius `spec.radius + margin`, each marked complete when the trace
/// is unchanged on radius `spec.radius + 2 margin`. `bases` must cover
/// `spec.radius + 2 margin + 1`.
pub fn compute_cells<C: Coefficient>(
    g: &WeylGroup,
    bases: &Bases<C>,
    spec: &GraphSpec,
    margin: usize,
) -> Result<CellPartition> {
    let outer = build_cell_graph(
        g,
        bases,
        &GraphSpec {
            radius: spec.radius + 2 * margin,
            ..spec.clone()
        },
    )?;
    let middle = outer.restrict(spec.radius + margin);
    let small = outer.restrict(spec.radius);
    // vertices are sorted by length, so each restriction is a prefix
    let n = small.len();
    let (classes, ids) = traces(&middle, n);
    let (outer_classes, _) = traces(&outer, n);
    let certified: BTreeSet<&Vec<usize>> = outer_classes.iter().collect();
    let complete = classes.iter().map(|c| certified.contains(c)).collect();

    let comps = middle.components();
    let mut comp_of = vec![0usize; middle.len()];
    for (c, members) in comps.iter().enumerate() {
        for &k in members {
            comp_of[k] = c;
        }
    }
    let comp_reach = quotient_reachability(&middle, &comp_of, comps.len());
    let class_of_comp: HashMap<usize, usize> = ids.iter().enumerate().map(|(i, &c)| (c, i)).collect();
    let reach: Vec<BTreeSet<usize>> = ids
        .iter()
        .map(|c| {
            comp_reach[*c]
                .iter()
                .filter_map(|t| class_of_comp.get(t).copied())
                .collect()
        })
        .collect();
    Ok(assemble(&small, classes, complete, &reach, margin))
}

/// Convenience entry point with `BigInt` coefficients and default Omega policy.
pub fn cells_for_config(g: &WeylGroup, cfg: &Config, side: CellSide) -> Result<CellPartition> {
    cfg.validate(g.datum())?;
    let bases = Bases::<BigInt>::build(g, cfg.ball_radius + 2 * cfg.margin + 1)?;
    let spec = GraphSpec::extended(g, side, cfg.ball_radius, cfg.omega_bound);
    compute_cells(g, &bases, &spec, cfg.margin)
}

/// Result of matching complete two-sided cells with complete antispherical cells.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct BijectionReport {
    /// `(two-sided cell id, antispherical cell id)`.
    pub pairs: Vec<(usize, usize)>,
    pub perfect: bool,
    pub problems: Vec<String>,
}

/// Each complete two-sided cell should meet `W_f \ W_ext` in exactly one
/// complete antispherical cell, and every complete antispherical cell should
/// arise this way exactly once.
pub fn check_two_sided_vs_antispherical(
    g: &WeylGroup,
    two_sided: &CellPartition,
    asph: &CellPartition,
) -> BijectionReport {
    let mut report = BijectionReport::default();
    let mut hit: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for (i, cell) in two_sided.complete_cells() {
        let met: BTreeSet<usize> = cell
            .members
            .iter()
            .filter(|w| g.in_fw(w))
            .filter_map(|w| asph.cell_of(w))
            .collect();
        let complete: Vec<usize> = met.iter().copied().filter(|&j| asph.cells[j].complete).collect();
        if met.len() != 1 || complete.len() != 1 {
            report.problems.push(format!(
                "two-sided cell {i} meets antispherical cells {met:?} (complete: {complete:?})"
            ));
            continue;
        }
        report.pairs.push((i, complete[0]));
        hit.entry(complete[0]).or_default().push(i);
    }
    for (j, _) in asph.complete_cells() {
        match hit.get(&j).map(Vec::len) {
            Some(1) => {}
            Some(k) => report.problems.push(format!("antispherical cell {j} matched {k} times")),
            None => report.problems.push(format!("antispherical cell {j} unmatched")),
        }
    }
    report.perfect = report.problems.is_empty();
    report
}

/// Right `Omega`-stability: `w omega` lies in the cell of `w` whenever both are vertices.
/// Returns the violating pairs (empty when stable).
pub fn check_omega_stability(g: &WeylGroup, partition: &CellPartition, omegas: &[WeylElt]) -> Vec<(WeylElt, WeylElt)> {
    let mut bad = Vec::new();
    for w in partition.members() {
        for o in omegas {
            let wo = g.multiply(w, o);
            if let Some(c) = partition.cell_of(&wo) {
                if Some(c) != partition.cell_of(w) {
                    bad.push((w.clone(), o.clone()));
                }
            }
        }
    }
    bad
}

/// Compares the restriction to `W` of an extended partition with a partition
/// computed inside `W`: for `u, w` in complete cells of both, `u ~ w` must
/// agree. Returns the disagreeing pairs.
pub fn check_w_restriction(g: &WeylGroup, extended: &CellPartition, inner: &CellPartition) -> Vec<(WeylElt, WeylElt)> {
    let elts: Vec<&WeylElt> = inner
        .complete_cells()
        .flat_map(|(_, c)| c.members.iter())
        .filter(|w| g.in_coxeter_group(w))
        .filter(|w| extended.cell_of(w).is_some_and(|c| extended.cells[c].complete))
        .collect();
    let mut bad = Vec::new();
    for (a, u) in elts.iter().enumerate() {
        for w in &elts[a + 1..] {
            let same_ext = extended.cell_of(u) == extended.cell_of(w);
            let same_inner = inner.cell_of(u) == inner.cell_of(w);
            if same_ext != same_inner {
                bad.push(((*u).clone(), (*w).clone()));
            }
        }
    }
    bad
}

/// Complete antispherical cells with no member in `W_f \ W_ext / W_f`.
pub fn cells_missing_double_coset_reps(g: &WeylGroup, partition: &CellPartition) -> Vec<usize> {
    partition
        .complete_cells()
        .filter(|(_, c)| !c.members.iter().any(|w| g.in_fwf(w)))
        .map(|(i, _)| i)
        .collect()
}

/// Text form of a cell's members.
pub fn member_strings(g: &WeylGroup, cell: &Cell) -> Vec<String> {
    cell.members.iter().map(|w| format_elt(g, w)).collect()
}
