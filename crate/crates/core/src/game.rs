//! The 3-valued model-checking game on a modal transition system.
//!
//! The game-graph is built breadth-first from `I × {Φ}`. Its nodes are
//! `(state, closure member)` pairs; auxiliary edges follow the boolean
//! structure and until/release unfoldings, progress edges follow may (and
//! must) transitions out of `AX`/`EX` nodes. Coloring walks the may-MSCCs
//! bottom-up: Phase 1 propagates the local rules, Phase 2 resolves the
//! remaining cycle according to the component's until/release witness.

use std::cmp::Reverse;
use std::collections::{BTreeMap, BinaryHeap, HashMap, VecDeque};
use std::fmt::Write as _;

use crate::ctl::{Closure, Formula, FormulaId, Quant};
use crate::error::{Error, Result};
use crate::models::{Mts, StateId, Ts};

pub type NodeId = usize;
pub type EdgeId = usize;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Color {
    T,
    F,
    Unknown,
}

impl Color {
    pub fn from_bool(b: bool) -> Color {
        if b {
            Color::T
        } else {
            Color::F
        }
    }

    pub fn definite(self) -> Option<bool> {
        match self {
            Color::T => Some(true),
            Color::F => Some(false),
            Color::Unknown => None,
        }
    }
}

/// Which kind of fixpoint formula a node carries; also the witness case.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Fixpoint {
    Until,
    Release,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NodeKind {
    /// Literal, constant, or pruned (reused) node with its fixed winner.
    Terminal(bool),
    And,
    Or,
    ANext,
    ENext,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GameNode {
    pub state: StateId,
    pub formula: FormulaId,
    pub kind: NodeKind,
    /// Set when the node's formula is an until/release formula.
    pub fixpoint: Option<Fixpoint>,
    /// Pruned because its color was known from an earlier iteration.
    pub reused: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EdgeFlavor {
    Auxiliary,
    ProgressMay,
    ProgressMust,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GameEdge {
    pub from: NodeId,
    pub to: NodeId,
    pub flavor: EdgeFlavor,
    /// Index into the MTS's may transitions, for progress edges.
    pub transition: Option<usize>,
}

impl GameEdge {
    pub fn is_progress(&self) -> bool {
        self.flavor != EdgeFlavor::Auxiliary
    }

    pub fn is_must(&self) -> bool {
        self.flavor == EdgeFlavor::ProgressMust
    }
}

/// Definite colors carried over from earlier refinement iterations.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ReuseStore {
    colors: BTreeMap<(StateId, FormulaId), bool>,
}

impl ReuseStore {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn get(&self, state: StateId, formula: FormulaId) -> Option<bool> {
        self.colors.get(&(state, formula)).copied()
    }

    pub fn insert(&mut self, state: StateId, formula: FormulaId, value: bool) {
        self.colors.insert((state, formula), value);
    }

    pub fn len(&self) -> usize {
        self.colors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.colors.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = ((StateId, FormulaId), bool)> + '_ {
        self.colors.iter().map(|(&k, &v)| (k, v))
    }

    /// Records every definitely colored node of a solved game.
    pub fn absorb(&mut self, graph: &GameGraph, coloring: &Coloring) {
        for (id, node) in graph.nodes.iter().enumerate() {
            if let Some(v) = coloring.color(id).definite() {
                self.insert(node.state, node.formula, v);
            }
        }
    }
}

#[derive(Debug, Clone)]
pub struct GameGraph {
    pub nodes: Vec<GameNode>,
    pub edges: Vec<GameEdge>,
    pub initial: Vec<NodeId>,
    out: Vec<Vec<EdgeId>>,
    inc: Vec<Vec<EdgeId>>,
    index: HashMap<(StateId, FormulaId), NodeId>,
}

impl GameGraph {
    pub fn node_count(&self) -> usize {
        self.nodes.len()
    }

    pub fn reused_count(&self) -> usize {
        self.nodes.iter().filter(|n| n.reused).count()
    }

    pub fn lookup(&self, state: StateId, formula: FormulaId) -> Option<NodeId> {
        self.index.get(&(state, formula)).copied()
    }

    pub fn out_edges(&self, node: NodeId) -> impl Iterator<Item = &GameEdge> + '_ {
        self.out[node].iter().map(move |&e| &self.edges[e])
    }

    pub fn out_edge_ids(&self, node: NodeId) -> &[EdgeId] {
        &self.out[node]
    }

    pub fn in_edges(&self, node: NodeId) -> impl Iterator<Item = &GameEdge> + '_ {
        self.inc[node].iter().map(move |&e| &self.edges[e])
    }

    fn add_edge(&mut self, from: NodeId, to: NodeId, flavor: EdgeFlavor, transition: Option<usize>) {
        let id = self.edges.len();
        self.edges.push(GameEdge {
            from,
            to,
            flavor,
            transition,
        });
        self.out[from].push(id);
        self.inc[to].push(id);
    }
}

/// Builds the game-graph for `mts × Φ` breadth-first from the initial
/// configurations. Nodes found in `reuse` become colored terminals and are
/// not expanded further.
pub fn build_game_graph(mts: &Mts, closure: &Closure, reuse: &ReuseStore) -> GameGraph {
    let ts = &mts.ts;
    let mut by_source: Vec<Vec<usize>> = vec![Vec::new(); ts.states.len()];
    for (i, t) in ts.transitions.iter().enumerate() {
        by_source[t.source].push(i);
    }
    let prop_ids: HashMap<&str, Option<usize>> = closure
        .ids()
        .filter_map(|id| match closure.get(id) {
            Formula::Lit { prop, .. } => Some((prop.as_str(), ts.prop_id(prop))),
            _ => None,
        })
        .collect();

    let mut g = GameGraph {
        nodes: Vec::new(),
        edges: Vec::new(),
        initial: Vec::new(),
        out: Vec::new(),
        inc: Vec::new(),
        index: HashMap::new(),
    };
    let mut queue = VecDeque::new();

    let discover = |g: &mut GameGraph, queue: &mut VecDeque<NodeId>, state: StateId, formula: FormulaId| {
        if let Some(&id) = g.index.get(&(state, formula)) {
            return id;
        }
        let f = closure.get(formula);
        let fixpoint = match f {
            Formula::Until(..) => Some(Fixpoint::Until),
            Formula::Release(..) => Some(Fixpoint::Release),
            _ => None,
        };
        let (kind, reused) = match reuse.get(state, formula) {
            Some(v) => (NodeKind::Terminal(v), true),
            None => {
                let kind = match f {
                    Formula::True => NodeKind::Terminal(true),
                    Formula::False => NodeKind::Terminal(false),
                    Formula::Lit { prop, positive } => {
                        let holds = prop_ids[prop.as_str()].is_some_and(|p| ts.has_label(state, p));
                        NodeKind::Terminal(holds == *positive)
                    }
                    Formula::And(..) | Formula::Release(..) => NodeKind::And,
                    Formula::Or(..) | Formula::Until(..) => NodeKind::Or,
                    Formula::Next(Quant::A, _) => NodeKind::ANext,
                    Formula::Next(Quant::E, _) => NodeKind::ENext,
                };
                (kind, false)
            }
        };
        let id = g.nodes.len();
        g.nodes.push(GameNode {
            state,
            formula,
            kind,
            fixpoint,
            reused,
        });
        g.out.push(Vec::new());
        g.inc.push(Vec::new());
        g.index.insert((state, formula), id);
        if !reused {
            queue.push_back(id);
        }
        id
    };

    for &s in &ts.initial {
        let id = discover(&mut g, &mut queue, s, closure.root());
        if !g.initial.contains(&id) {
            g.initial.push(id);
        }
    }

    while let Some(id) = queue.pop_front() {
        let GameNode { state, formula, .. } = g.nodes[id];
        match closure.get(formula) {
            Formula::True | Formula::False | Formula::Lit { .. } => {}
            &Formula::And(a, b) | &Formula::Or(a, b) => {
                for child in [a, b] {
                    let to = discover(&mut g, &mut queue, state, child);
                    g.add_edge(id, to, EdgeFlavor::Auxiliary, None);
                }
            }
            Formula::Until(..) | Formula::Release(..) => {
                let exp = closure
                    .expansion(formula)
                    .expect("closure records an expansion for every fixpoint formula");
                let to = discover(&mut g, &mut queue, state, exp);
                g.add_edge(id, to, EdgeFlavor::Auxiliary, None);
            }
            &Formula::Next(_, inner) => {
                for &t in &by_source[state] {
                    let to = discover(&mut g, &mut queue, ts.transitions[t].target, inner);
                    let flavor = if mts.is_must(t) {
                        EdgeFlavor::ProgressMust
                    } else {
                        EdgeFlavor::ProgressMay
                    };
                    g.add_edge(id, to, flavor, Some(t));
                }
            }
        }
    }
    g
}

/// The may-MSCCs of a game-graph, ordered so that every edge leads to the
/// same or an earlier component.
#[derive(Debug, Clone)]
pub struct MsccPartition {
    pub components: Vec<Vec<NodeId>>,
    pub component_of: Vec<usize>,
    /// For non-trivial components, the unique until/release formula on the
    /// cycle and its kind.
    pub witness: Vec<Option<(FormulaId, Fixpoint)>>,
}

impl MsccPartition {
    pub fn is_trivial(&self, component: usize) -> bool {
        self.witness[component].is_none()
    }
}

/// Splits the graph into SCCs over all edges (auxiliary and may progress
/// edges; must edges are a subset of may edges). Components are emitted in
/// reverse topological order of the condensation, ties broken by smallest
/// member id.
pub fn decompose(graph: &GameGraph) -> Result<MsccPartition> {
    let n = graph.node_count();
    let sccs = tarjan(graph);
    let mut comp_of_raw = vec![0usize; n];
    for (c, members) in sccs.iter().enumerate() {
        for &m in members {
            comp_of_raw[m] = c;
        }
    }

    // Out-degree in the condensation, and predecessor lists.
    let k = sccs.len();
    let mut out_deg = vec![0usize; k];
    let mut preds: Vec<Vec<usize>> = vec![Vec::new(); k];
    let mut cyclic = vec![false; k];
    for e in &graph.edges {
        let (a, b) = (comp_of_raw[e.from], comp_of_raw[e.to]);
        if a == b {
            cyclic[a] = true;
        } else {
            out_deg[a] += 1;
            preds[b].push(a);
        }
    }
    let min_member: Vec<NodeId> = sccs.iter().map(|m| m[0]).collect();
    let mut ready: BinaryHeap<Reverse<(NodeId, usize)>> = (0..k)
        .filter(|&c| out_deg[c] == 0)
        .map(|c| Reverse((min_member[c], c)))
        .collect();
    let mut order = Vec::with_capacity(k);
    while let Some(Reverse((_, c))) = ready.pop() {
        order.push(c);
        for &p in &preds[c] {
            out_deg[p] -= 1;
            if out_deg[p] == 0 {
                ready.push(Reverse((min_member[p], p)));
            }
        }
    }
    if order.len() != k {
        return Err(Error::Invariant("condensation is not acyclic".into()));
    }

    let mut components = Vec::with_capacity(k);
    let mut witness = Vec::with_capacity(k);
    let mut component_of = vec![0usize; n];
    for (pos, &c) in order.iter().enumerate() {
        let members = sccs[c].clone();
        for &m in &members {
            component_of[m] = pos;
        }
        let w = if cyclic[c] {
            let mut found: Vec<(FormulaId, Fixpoint)> = Vec::new();
            for &m in &members {
                let node = &graph.nodes[m];
                if let Some(fp) = node.fixpoint {
                    if !found.iter().any(|(f, _)| *f == node.formula) {
                        found.push((node.formula, fp));
                    }
                }
            }
            if found.len() != 1 {
                return Err(Error::MalformedGame(format!(
                    "cyclic component with {} members has {} until/release witnesses",
                    members.len(),
                    found.len()
                )));
            }
            Some(found[0])
        } else {
            None
        };
        components.push(members);
        witness.push(w);
    }
    Ok(MsccPartition {
        components,
        component_of,
        witness,
    })
}

/// Iterative Tarjan; each returned component is sorted ascending.
fn tarjan(graph: &GameGraph) -> Vec<Vec<NodeId>> {
    const UNVISITED: usize = usize::MAX;
    let n = graph.node_count();
    let mut index = vec![UNVISITED; n];
    let mut low = vec![0usize; n];
    let mut on_stack = vec![false; n];
    let mut stack = Vec::new();
    let mut next_index = 0;
    let mut out = Vec::new();
    // (node, position in its out-edge list)
    let mut call: Vec<(NodeId, usize)> = Vec::new();

    for root in 0..n {
        if index[root] != UNVISITED {
            continue;
        }
        call.push((root, 0));
        index[root] = next_index;
        low[root] = next_index;
        next_index += 1;
        stack.push(root);
        on_stack[root] = true;

        while let Some(&(v, pos)) = call.last() {
            let edges = graph.out_edge_ids(v);
            if pos < edges.len() {
                let w = graph.edges[edges[pos]].to;
                if let Some(top) = call.last_mut() {
                    top.1 += 1;
                }
                if index[w] == UNVISITED {
                    index[w] = next_index;
                    low[w] = next_index;
                    next_index += 1;
                    stack.push(w);
                    on_stack[w] = true;
                    call.push((w, 0));
                } else if on_stack[w] {
                    low[v] = low[v].min(index[w]);
                }
            } else {
                call.pop();
                if let Some(&(parent, _)) = call.last() {
                    low[parent] = low[parent].min(low[v]);
                }
                if low[v] == index[v] {
                    let mut comp = Vec::new();
                    loop {
                        let w = stack.pop().expect("tarjan stack underflow");
                        on_stack[w] = false;
                        comp.push(w);
                        if w == v {
                            break;
                        }
                    }
                    comp.sort_unstable();
                    out.push(comp);
                }
            }
        }
    }
    out
}

/// How a node received its color.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Rule {
    Reused,
    Phase1,
    Phase2a(Fixpoint),
    Phase2b(Fixpoint),
}

/// A total 3-valued coloring with the order in which colors were assigned.
#[derive(Debug, Clone)]
pub struct Coloring {
    colors: Vec<Color>,
    timestamps: Vec<u32>,
    rules: Vec<Rule>,
}

impl Coloring {
    pub fn color(&self, node: NodeId) -> Color {
        self.colors[node]
    }

    pub fn timestamp(&self, node: NodeId) -> u32 {
        self.timestamps[node]
    }

    pub fn rule(&self, node: NodeId) -> Rule {
        self.rules[node]
    }

    pub fn colors(&self) -> &[Color] {
        &self.colors
    }
}

struct Painter<'a> {
    graph: &'a GameGraph,
    colors: Vec<Option<Color>>,
    timestamps: Vec<u32>,
    rules: Vec<Rule>,
    clock: u32,
}

impl Painter<'_> {
    fn paint(&mut self, node: NodeId, color: Color, rule: Rule) {
        debug_assert!(self.colors[node].is_none(), "node {node} colored twice");
        self.colors[node] = Some(color);
        self.timestamps[node] = self.clock;
        self.rules[node] = rule;
        self.clock += 1;
    }

    fn children(&self, node: NodeId) -> impl Iterator<Item = (Option<Color>, bool)> + '_ {
        self.graph
            .out_edges(node)
            .map(|e| (self.colors[e.to], e.is_must()))
    }

    fn phase1(&self, node: NodeId) -> Option<Color> {
        use Color::*;
        let is = |c: Option<Color>, set: &[Color]| c.is_some_and(|c| set.contains(&c));
        match self.graph.nodes[node].kind {
            NodeKind::Terminal(v) => Some(Color::from_bool(v)),
            NodeKind::And => {
                let kids: Vec<_> = self.children(node).map(|(c, _)| c).collect();
                if kids.contains(&Some(F)) {
                    Some(F)
                } else if kids.iter().all(|&c| c == Some(T)) {
                    Some(T)
                } else if kids.iter().all(|&c| is(c, &[T, Unknown])) {
                    Some(Unknown)
                } else {
                    None
                }
            }
            NodeKind::Or => {
                let kids: Vec<_> = self.children(node).map(|(c, _)| c).collect();
                if kids.contains(&Some(T)) {
                    Some(T)
                } else if kids.iter().all(|&c| c == Some(F)) {
                    Some(F)
                } else if kids.iter().all(|&c| is(c, &[F, Unknown])) {
                    Some(Unknown)
                } else {
                    None
                }
            }
            NodeKind::ANext => {
                let kids: Vec<_> = self.children(node).collect();
                if kids.iter().any(|&(c, must)| must && c == Some(F)) {
                    Some(F)
                } else if kids.iter().all(|&(c, _)| c == Some(T)) {
                    Some(T)
                } else if kids.iter().filter(|k| k.1).all(|&(c, _)| is(c, &[T, Unknown]))
                    && kids.iter().any(|&(c, _)| is(c, &[F, Unknown]))
                {
                    Some(Unknown)
                } else {
                    None
                }
            }
            NodeKind::ENext => {
                let kids: Vec<_> = self.children(node).collect();
                if kids.iter().any(|&(c, must)| must && c == Some(T)) {
                    Some(T)
                } else if kids.iter().all(|&(c, _)| c == Some(F)) {
                    Some(F)
                } else if kids.iter().any(|&(c, _)| is(c, &[T, Unknown]))
                    && kids.iter().filter(|k| k.1).all(|&(c, _)| is(c, &[F, Unknown]))
                {
                    Some(Unknown)
                } else {
                    None
                }
            }
        }
    }

    /// Phase 2a: can the node no longer take the witness's default color?
    fn phase2a(&self, node: NodeId, case: Fixpoint) -> bool {
        use Color::*;
        let blocked: &[Color] = match case {
            Fixpoint::Until => &[T, Unknown],
            Fixpoint::Release => &[F, Unknown],
        };
        let is = |c: Option<Color>| c.is_some_and(|c| blocked.contains(&c));
        let mut kids = self.children(node);
        // Under an until witness the default is F, so a node is blocked when
        // its F-condition has become impossible; dually for release.
        let (conj_like, disj_like) = match case {
            Fixpoint::Until => (
                matches!(self.graph.nodes[node].kind, NodeKind::And | NodeKind::ANext),
                matches!(self.graph.nodes[node].kind, NodeKind::Or | NodeKind::ENext),
            ),
            Fixpoint::Release => (
                matches!(self.graph.nodes[node].kind, NodeKind::Or | NodeKind::ENext),
                matches!(self.graph.nodes[node].kind, NodeKind::And | NodeKind::ANext),
            ),
        };
        let next = matches!(self.graph.nodes[node].kind, NodeKind::ANext | NodeKind::ENext);
        if conj_like {
            if next {
                // all must-children blocked
                kids.all(|(c, must)| !must || is(c))
            } else {
                kids.all(|(c, _)| is(c))
            }
        } else if disj_like {
            kids.any(|(c, _)| is(c))
        } else {
            false
        }
    }

    fn predecessors_in(&self, node: NodeId, partition: &MsccPartition, comp: usize) -> Vec<NodeId> {
        self.graph
            .in_edges(node)
            .map(|e| e.from)
            .filter(|&p| partition.component_of[p] == comp && self.colors[p].is_none())
            .collect()
    }
}

/// Colors the game-graph component by component.
///
/// Within a component both Phase 1 and Phase 2a run as a LIFO worklist
/// seeded with the component's nodes in ascending id order; whenever a node
/// gets colored its uncolored predecessors in the component are pushed.
pub fn color_graph(graph: &GameGraph, partition: &MsccPartition) -> Result<Coloring> {
    let n = graph.node_count();
    let mut p = Painter {
        graph,
        colors: vec![None; n],
        timestamps: vec![0; n],
        rules: vec![Rule::Phase1; n],
        clock: 0,
    };

    for (ci, members) in partition.components.iter().enumerate() {
        let mut stack: Vec<NodeId> = members.clone();
        while let Some(v) = stack.pop() {
            if p.colors[v].is_some() {
                continue;
            }
            if let Some(c) = p.phase1(v) {
                let rule = if graph.nodes[v].reused {
                    Rule::Reused
                } else {
                    Rule::Phase1
                };
                p.paint(v, c, rule);
                stack.extend(p.predecessors_in(v, partition, ci));
            }
        }

        if members.iter().all(|&v| p.colors[v].is_some()) {
            continue;
        }
        let Some((_, case)) = partition.witness[ci] else {
            return Err(Error::Invariant(format!(
                "acyclic component {ci} left uncolored after Phase 1"
            )));
        };

        let mut stack: Vec<NodeId> = members.clone();
        while let Some(v) = stack.pop() {
            if p.colors[v].is_some() {
                continue;
            }
            if p.phase2a(v, case) {
                p.paint(v, Color::Unknown, Rule::Phase2a(case));
                stack.extend(p.predecessors_in(v, partition, ci));
            }
        }

        let default = match case {
            Fixpoint::Until => Color::F,
            Fixpoint::Release => Color::T,
        };
        for &v in members {
            if p.colors[v].is_none() {
                p.paint(v, default, Rule::Phase2b(case));
            }
        }
    }

    Ok(Coloring {
        colors: p.colors.into_iter().map(|c| c.expect("coloring is total")).collect(),
        timestamps: p.timestamps,
        rules: p.rules,
    })
}

/// Result of a 3-valued check.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ThreeValued {
    True,
    False,
    Indefinite,
}

pub fn evaluate_result(graph: &GameGraph, coloring: &Coloring) -> ThreeValued {
    let colors: Vec<Color> = graph.initial.iter().map(|&n| coloring.color(n)).collect();
    if colors.iter().all(|&c| c == Color::T) {
        ThreeValued::True
    } else if colors.contains(&Color::F) {
        ThreeValued::False
    } else {
        ThreeValued::Indefinite
    }
}

/// A failure node together with the may-not-must progress edge blamed for
/// the loss of precision.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Failure {
    pub node: NodeId,
    pub edge: EdgeId,
}

impl Failure {
    /// Index of the MTS may transition underlying the failure reason.
    pub fn transition(&self, graph: &GameGraph) -> usize {
        graph.edges[self.edge]
            .transition
            .expect("failure reasons are progress edges")
    }
}

/// All nodes colored `?` none of whose children was `?` at the time they got
/// their color.
pub fn failure_nodes(graph: &GameGraph, coloring: &Coloring) -> Vec<NodeId> {
    (0..graph.node_count())
        .filter(|&n| coloring.color(n) == Color::Unknown)
        .filter(|&n| {
            let ts = coloring.timestamp(n);
            graph
                .out_edges(n)
                .all(|e| coloring.color(e.to) != Color::Unknown || coloring.timestamp(e.to) > ts)
        })
        .collect()
}

/// Picks the failure node with the smallest discovery index and its reason
/// edge: an `AX` (`EX`) node's may-child colored F (T), or, for an `AX`
/// (`EX`) node colored in Phase 2a under an until (release) witness, a
/// may-child colored `?`. Among several candidate edges the child colored
/// earliest wins.
pub fn find_failure(graph: &GameGraph, coloring: &Coloring) -> Result<Failure> {
    for node in failure_nodes(graph, coloring) {
        let (blame, phase2_case) = match graph.nodes[node].kind {
            NodeKind::ANext => (Color::F, Fixpoint::Until),
            NodeKind::ENext => (Color::T, Fixpoint::Release),
            _ => continue,
        };
        let candidates = |want: Color| {
            graph
                .out_edge_ids(node)
                .iter()
                .copied()
                .filter(|&e| graph.edges[e].flavor == EdgeFlavor::ProgressMay)
                .filter(move |&e| coloring.color(graph.edges[e].to) == want)
                .min_by_key(|&e| (coloring.timestamp(graph.edges[e].to), e))
        };
        let edge = candidates(blame).or_else(|| {
            (coloring.rule(node) == Rule::Phase2a(phase2_case))
                .then(|| candidates(Color::Unknown))
                .flatten()
        });
        if let Some(edge) = edge {
            return Ok(Failure { node, edge });
        }
    }
    Err(Error::Invariant(
        "indefinite game has no failure node with a may-edge reason".into(),
    ))
}

/// A built, decomposed and colored game.
#[derive(Debug, Clone)]
pub struct SolvedGame {
    pub graph: GameGraph,
    pub partition: MsccPartition,
    pub coloring: Coloring,
    pub result: ThreeValued,
}

pub fn solve(mts: &Mts, closure: &Closure, reuse: &ReuseStore) -> Result<SolvedGame> {
    let graph = build_game_graph(mts, closure, reuse);
    let partition = decompose(&graph)?;
    let coloring = color_graph(&graph, &partition)?;
    let result = evaluate_result(&graph, &coloring);
    Ok(SolvedGame {
        graph,
        partition,
        coloring,
        result,
    })
}

fn dot_escape(s: &str) -> String {
    s.replace('\\', "\\\\").replace('"', "\\\"")
}

/// Graphviz rendering of a colored game-graph: green for T, red with a dashed
/// border for F, white for `?`; may-not-must progress edges are dashed.
pub fn to_dot(graph: &GameGraph, coloring: &Coloring, closure: &Closure, ts: &Ts) -> String {
    let mut out = String::from("digraph game {\n  node [shape=box, style=\"rounded,filled\"];\n");
    for (id, node) in graph.nodes.iter().enumerate() {
        let label = format!(
            "({}, {})",
            ts.states[node.state],
            closure.render(node.formula)
        );
        let (fill, style) = match coloring.color(id) {
            Color::T => ("green", "rounded,filled"),
            Color::F => ("red", "rounded,filled,dashed"),
            Color::Unknown => ("white", "rounded,filled"),
        };
        let peripheries = if graph.initial.contains(&id) { ", peripheries=2" } else { "" };
        let _ = writeln!(
            out,
            "  n{id} [label=\"{}\", fillcolor={fill}, style=\"{style}\"{peripheries}];",
            dot_escape(&label)
        );
    }
    for e in &graph.edges {
        let label = e
            .transition
            .map(|t| format!(", label=\"{}\"", dot_escape(&ts.actions[ts.transitions[t].action])))
            .unwrap_or_default();
        let style = if e.flavor == EdgeFlavor::ProgressMay { "dashed" } else { "solid" };
        let _ = writeln!(out, "  n{} -> n{} [style={style}{label}];", e.from, e.to);
    }
    out.push_str("}\n");
    out
}
