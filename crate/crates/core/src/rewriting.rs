//! Words over `{phi, psi}`, reduction strategies, commutation checks and the
//! rewriting graph generated by the two shifts.

use std::collections::{BTreeMap, BTreeSet, HashSet};
use std::fmt::{self, Write};
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{check_k, Error, Result};
use crate::placement::Placement;
use crate::shifts::{self, Shift, ShiftTrace};

/// A composition of shifts, written and applied like function composition:
/// the rightmost letter acts first.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct ShiftProgram {
    ops: Vec<Shift>,
}

impl ShiftProgram {
    pub fn new(ops: Vec<Shift>) -> Self {
        ShiftProgram { ops }
    }

    pub fn ops(&self) -> &[Shift] {
        &self.ops
    }

    pub fn len(&self) -> usize {
        self.ops.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ops.is_empty()
    }

    /// Shifts in the order they are applied.
    pub fn application_order(&self) -> impl Iterator<Item = Shift> + '_ {
        self.ops.iter().rev().copied()
    }
}

impl fmt::Display for ShiftProgram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, op) in self.ops.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{op}")?;
        }
        Ok(())
    }
}

/// Accepts `"phi psi psi"`, `"phi,psi"`, `"phipsipsi"` or `"φψψ"`.
impl FromStr for ShiftProgram {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut ops = Vec::new();
        let mut rest = s;
        loop {
            rest = rest.trim_start_matches(|c: char| c == ',' || c == '∘' || c.is_whitespace());
            if rest.is_empty() {
                break;
            }
            let (op, len) = if rest.starts_with("phi") {
                (Shift::Phi, 3)
            } else if rest.starts_with("psi") {
                (Shift::Psi, 3)
            } else if rest.starts_with('φ') {
                (Shift::Phi, 'φ'.len_utf8())
            } else if rest.starts_with('ψ') {
                (Shift::Psi, 'ψ'.len_utf8())
            } else {
                return Err(Error::Parse {
                    what: "shift program",
                    input: s.to_string(),
                });
            };
            ops.push(op);
            rest = &rest[len..];
        }
        Ok(ShiftProgram { ops })
    }
}

/// Applies `prog` right to left. Letters hitting a normal form are no-ops and
/// leave no trace.
pub fn apply_program(
    p: &Placement,
    k: usize,
    prog: &ShiftProgram,
) -> Result<(Placement, ShiftTrace)> {
    check_k(k)?;
    let mut trace = ShiftTrace::new(k);
    let mut cur = p.clone();
    for op in prog.application_order() {
        if let Some((next, step)) = shifts::shift_step(&cur, k, op)? {
            trace.push(step);
            cur = next;
        }
    }
    Ok((cur, trace))
}

/// How to pick the next shift when reducing to normal form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Strategy {
    AlwaysPhi,
    AlwaysPsi,
    /// phi, psi, phi, ...
    Alternate,
    /// Fair coin per step from a seeded ChaCha generator.
    Random {
        seed: u64,
    },
    /// Run the program first, then continue with phi.
    Prefix(ShiftProgram),
}

impl fmt::Display for Strategy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Strategy::AlwaysPhi => f.write_str("always-phi"),
            Strategy::AlwaysPsi => f.write_str("always-psi"),
            Strategy::Alternate => f.write_str("alternate"),
            Strategy::Random { seed } => write!(f, "random(seed={seed})"),
            Strategy::Prefix(prog) => write!(f, "prefix({prog})"),
        }
    }
}

/// Reduces `p` until it avoids `k ... 2 1`. The trace counts only steps that
/// moved dots, so `trace.step_count()` is the length of the reduction.
pub fn normal_form(
    p: &Placement,
    k: usize,
    strategy: &Strategy,
) -> Result<(Placement, ShiftTrace)> {
    normal_form_capped(p, k, strategy, None)
}

pub fn normal_form_capped(
    p: &Placement,
    k: usize,
    strategy: &Strategy,
    cap: Option<usize>,
) -> Result<(Placement, ShiftTrace)> {
    check_k(k)?;
    let mut trace = ShiftTrace::with_cap(k, cap);
    let mut cur = p.clone();
    if let Strategy::Prefix(prog) = strategy {
        for op in prog.application_order() {
            if let Some((next, step)) = shifts::shift_step(&cur, k, op)? {
                trace.push(step);
                cur = next;
            }
        }
    }
    let mut rng = match strategy {
        Strategy::Random { seed } => Some(ChaCha8Rng::seed_from_u64(*seed)),
        _ => None,
    };
    let mut turn = Shift::Phi;
    loop {
        let op = match strategy {
            Strategy::AlwaysPhi | Strategy::Prefix(_) => Shift::Phi,
            Strategy::AlwaysPsi => Shift::Psi,
            Strategy::Alternate => turn,
            Strategy::Random { .. } => {
                if rng.as_mut().expect("seeded above").gen_bool(0.5) {
                    Shift::Phi
                } else {
                    Shift::Psi
                }
            }
        };
        let Some((next, step)) = shifts::shift_step(&cur, k, op)? else {
            break;
        };
        trace.push(step);
        cur = next;
        turn = turn.other();
    }
    Ok((cur, trace))
}

pub fn is_normal(p: &Placement, k: usize) -> Result<bool> {
    Ok(shifts::a_sequence(p, k)?.is_none())
}

/// `L(p)`: the fewest shifts reaching a normal form, by breadth-first search
/// over both successors.
pub fn minimal_steps(p: &Placement, k: usize) -> Result<usize> {
    check_k(k)?;
    let mut frontier = vec![p.clone()];
    let mut seen: HashSet<Placement> = HashSet::new();
    seen.insert(p.clone());
    for depth in 0.. {
        let mut next_frontier = Vec::new();
        for q in &frontier {
            if is_normal(q, k)? {
                return Ok(depth);
            }
            for op in [Shift::Phi, Shift::Psi] {
                let r = shifts::apply(q, k, op)?;
                if seen.insert(r.clone()) {
                    next_frontier.push(r);
                }
            }
        }
        frontier = next_frontier;
    }
    unreachable!("every shift lowers the inversion number")
}

/// Normal forms and reduction lengths of one placement under several strategies.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConfluenceReport {
    pub strategies: Vec<Strategy>,
    pub normal_forms: Vec<Placement>,
    pub step_counts: Vec<usize>,
    pub minimal_steps: usize,
}

impl ConfluenceReport {
    /// One normal form, and every reduction has length `minimal_steps`.
    pub fn agrees(&self) -> bool {
        self.normal_forms.windows(2).all(|w| w[0] == w[1])
            && self.step_counts.iter().all(|&s| s == self.minimal_steps)
    }
}

/// Reduces `p` with always-phi, always-psi, alternate, and `random_runs`
/// random strategies seeded `seed, seed + 1, ...`.
pub fn confluence_check(
    p: &Placement,
    k: usize,
    random_runs: usize,
    seed: u64,
) -> Result<ConfluenceReport> {
    let mut strategies = vec![
        Strategy::AlwaysPhi,
        Strategy::AlwaysPsi,
        Strategy::Alternate,
    ];
    strategies.extend((0..random_runs as u64).map(|i| Strategy::Random {
        seed: seed.wrapping_add(i),
    }));
    let mut normal_forms = Vec::with_capacity(strategies.len());
    let mut step_counts = Vec::with_capacity(strategies.len());
    for s in &strategies {
        let (q, trace) = normal_form_capped(p, k, s, Some(0))?;
        normal_forms.push(q);
        step_counts.push(trace.step_count());
    }
    Ok(ConfluenceReport {
        strategies,
        normal_forms,
        step_counts,
        minimal_steps: minimal_steps(p, k)?,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RewriteNode {
    pub placement: Placement,
    pub is_normal: bool,
    pub minimal_steps: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct LocalCommutationReport {
    /// Both sequences exist and differ.
    pub applicable: bool,
    /// `phi(psi(p)) == psi(phi(p))`.
    pub holds: bool,
    /// `phi(p)` and `psi(p)` both still contain `k ... 2 1`.
    pub both_still_contain: bool,
}

impl LocalCommutationReport {
    pub fn confirms(&self) -> bool {
        !self.applicable || (self.holds && self.both_still_contain)
    }
}

pub fn local_commutation_check(p: &Placement, k: usize) -> Result<LocalCommutationReport> {
    let a = shifts::a_sequence(p, k)?;
    let b = shifts::b_sequence(p, k)?;
    let applicable = a.is_some() && a != b;
    if !applicable {
        return Ok(LocalCommutationReport {
            applicable,
            holds: false,
            both_still_contain: false,
        });
    }
    let after_phi = shifts::a_shift(p, k)?;
    let after_psi = shifts::b_shift(p, k)?;
    Ok(LocalCommutationReport {
        applicable,
        holds: shifts::a_shift(&after_psi, k)? == shifts::b_shift(&after_phi, k)?,
        both_still_contain: !is_normal(&after_phi, k)? && !is_normal(&after_psi, k)?,
    })
}

/// `phi*(p') == phi*(p)'`.
pub fn global_commutation_check(p: &Placement, k: usize) -> Result<bool> {
    let (direct, _) = shifts::iterate(p, k, Shift::Phi, Some(0))?;
    let (reflected, _) = shifts::iterate(&p.inverse(), k, Shift::Phi, Some(0))?;
    Ok(reflected == direct.inverse())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum EdgeLabel {
    Phi,
    Psi,
    /// phi and psi agree at the source.
    Both,
}

impl EdgeLabel {
    pub fn as_str(self) -> &'static str {
        match self {
            EdgeLabel::Phi => "phi",
            EdgeLabel::Psi => "psi",
            EdgeLabel::Both => "both",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct RewriteEdge {
    /// Index into [`RewriteGraph::nodes`].
    pub from: usize,
    pub to: usize,
    pub label: EdgeLabel,
}

/// Closure of a seed set under phi and psi. Nodes are sorted by
/// `(board, permutation)`; edges by `(source, label)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RewriteGraph {
    k: usize,
    nodes: Vec<RewriteNode>,
    edges: Vec<RewriteEdge>,
}

impl RewriteGraph {
    pub fn explore(seeds: &[Placement], k: usize) -> Result<Self> {
        check_k(k)?;
        let mut successors: BTreeMap<Placement, Option<(Placement, Placement)>> = BTreeMap::new();
        let mut stack: Vec<Placement> = seeds.to_vec();
        while let Some(p) = stack.pop() {
            if successors.contains_key(&p) {
                continue;
            }
            let succ = if is_normal(&p, k)? {
                None
            } else {
                let phi = shifts::a_shift(&p, k)?;
                let psi = shifts::b_shift(&p, k)?;
                stack.push(phi.clone());
                stack.push(psi.clone());
                Some((phi, psi))
            };
            successors.insert(p, succ);
        }

        let index: BTreeMap<&Placement, usize> =
            successors.keys().enumerate().map(|(i, p)| (p, i)).collect();
        let mut edges = Vec::new();
        for (from, succ) in successors.values().enumerate() {
            if let Some((phi, psi)) = succ {
                if phi == psi {
                    edges.push(RewriteEdge {
                        from,
                        to: index[phi],
                        label: EdgeLabel::Both,
                    });
                } else {
                    edges.push(RewriteEdge {
                        from,
                        to: index[phi],
                        label: EdgeLabel::Phi,
                    });
                    edges.push(RewriteEdge {
                        from,
                        to: index[psi],
                        label: EdgeLabel::Psi,
                    });
                }
            }
        }
        edges.sort_by_key(|e| (e.from, e.label.as_str()));

        // Shifts lower the inversion number, so increasing inversion number
        // is a topological order from the sinks up.
        let mut order: Vec<usize> = (0..successors.len()).collect();
        let placements: Vec<&Placement> = successors.keys().collect();
        order.sort_by_key(|&i| placements[i].inversion_number());
        let mut steps = vec![0usize; placements.len()];
        for &i in &order {
            if let Some((phi, psi)) = &successors[placements[i]] {
                steps[i] = 1 + steps[index[phi]].min(steps[index[psi]]);
            }
        }

        let nodes = successors
            .iter()
            .zip(steps)
            .map(|((p, succ), minimal_steps)| RewriteNode {
                placement: p.clone(),
                is_normal: succ.is_none(),
                minimal_steps,
            })
            .collect();
        Ok(RewriteGraph { k, nodes, edges })
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn nodes(&self) -> &[RewriteNode] {
        &self.nodes
    }

    pub fn edges(&self) -> &[RewriteEdge] {
        &self.edges
    }

    pub fn out_edges(&self, node: usize) -> impl Iterator<Item = &RewriteEdge> {
        self.edges.iter().filter(move |e| e.from == node)
    }

    pub fn find(&self, p: &Placement) -> Option<usize> {
        self.nodes.binary_search_by(|n| n.placement.cmp(p)).ok()
    }

    fn single_board(&self) -> bool {
        self.nodes
            .windows(2)
            .all(|w| w[0].placement.board() == w[1].placement.board())
    }

    /// One-line notation, with the board appended when the graph spans several.
    pub fn node_label(&self, node: usize) -> String {
        let p = &self.nodes[node].placement;
        if self.single_board() {
            p.perm().to_string()
        } else {
            format!("{} @ {}", p.perm(), p.board())
        }
    }

    pub fn to_dot(&self) -> String {
        let labels: Vec<String> = (0..self.nodes.len()).map(|i| self.node_label(i)).collect();
        let mut out = String::from("digraph {\n");
        for (node, label) in self.nodes.iter().zip(&labels) {
            if node.is_normal {
                writeln!(out, "  \"{label}\" [peripheries=2];").unwrap();
            } else {
                writeln!(out, "  \"{label}\";").unwrap();
            }
        }
        for e in &self.edges {
            writeln!(
                out,
                "  \"{}\" -> \"{}\" [label=\"{}\"];",
                labels[e.from],
                labels[e.to],
                e.label.as_str()
            )
            .unwrap();
        }
        out.push_str("}\n");
        out
    }

    pub fn to_json(&self) -> String {
        #[derive(Serialize)]
        struct JsonNode<'a> {
            id: String,
            perm: &'a crate::perm::Permutation,
            board: &'a crate::board::Board,
            is_normal: bool,
            minimal_steps: usize,
        }
        #[derive(Serialize)]
        struct JsonEdge {
            from: String,
            to: String,
            label: EdgeLabel,
        }
        #[derive(Serialize)]
        struct JsonGraph<'a> {
            k: usize,
            nodes: Vec<JsonNode<'a>>,
            edges: Vec<JsonEdge>,
        }
        let labels: Vec<String> = (0..self.nodes.len()).map(|i| self.node_label(i)).collect();
        let graph = JsonGraph {
            k: self.k,
            nodes: self
                .nodes
                .iter()
                .zip(&labels)
                .map(|(n, id)| JsonNode {
                    id: id.clone(),
                    perm: n.placement.perm(),
                    board: n.placement.board(),
                    is_normal: n.is_normal,
                    minimal_steps: n.minimal_steps,
                })
                .collect(),
            edges: self
                .edges
                .iter()
                .map(|e| JsonEdge {
                    from: labels[e.from].clone(),
                    to: labels[e.to].clone(),
                    label: e.label,
                })
                .collect(),
        };
        serde_json::to_string_pretty(&graph).expect("graph serializes")
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GraphFormat {
    Dot,
    Json,
}

impl FromStr for GraphFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "dot" => Ok(GraphFormat::Dot),
            "json" => Ok(GraphFormat::Json),
            _ => Err(Error::UnknownFormat(s.to_string())),
        }
    }
}

pub fn export_graph(seeds: &[Placement], k: usize, format: GraphFormat) -> Result<String> {
    let graph = RewriteGraph::explore(seeds, k)?;
    Ok(match format {
        GraphFormat::Dot => graph.to_dot(),
        GraphFormat::Json => graph.to_json(),
    })
}

/// Distinct placements reachable from `seeds`, including the seeds.
pub fn reachable(seeds: &[Placement], k: usize) -> Result<BTreeSet<Placement>> {
    Ok(RewriteGraph::explore(seeds, k)?
        .nodes
        .into_iter()
        .map(|n| n.placement)
        .collect())
}
