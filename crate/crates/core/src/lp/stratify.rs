use std::collections::{BTreeMap, BTreeSet, VecDeque};

use petgraph::algo::tarjan_scc;
use petgraph::graph::{DiGraph, NodeIndex};

use super::{ground, GroundAtom, Program};
use crate::error::{Error, Result};
use crate::limits::Limits;

/// Stratum of each predicate, numbered from 1.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Stratification {
    pub strata: BTreeMap<String, usize>,
}

impl Stratification {
    /// Number of strata.
    pub fn depth(&self) -> usize {
        self.strata.values().copied().max().unwrap_or(1)
    }

    pub fn stratum(&self, predicate: &str) -> usize {
        self.strata.get(predicate).copied().unwrap_or(1)
    }
}

/// The least stratification, or the negative cycle that prevents one.
pub fn stratify(program: &Program) -> Result<Stratification> {
    let mut graph: DiGraph<String, bool> = DiGraph::new();
    let mut nodes: BTreeMap<String, NodeIndex> = BTreeMap::new();
    let mut node = |g: &mut DiGraph<String, bool>, p: &str| {
        *nodes.entry(p.to_owned()).or_insert_with(|| g.add_node(p.to_owned()))
    };
    for r in program.rules() {
        let h = node(&mut graph, &r.head.predicate);
        for a in &r.pos {
            let b = node(&mut graph, &a.predicate);
            graph.add_edge(b, h, false);
        }
        for a in &r.neg {
            let b = node(&mut graph, &a.predicate);
            graph.add_edge(b, h, true);
        }
    }
    let sccs = tarjan_scc(&graph);
    let mut component = vec![0usize; graph.node_count()];
    for (i, scc) in sccs.iter().enumerate() {
        for n in scc {
            component[n.index()] = i;
        }
    }
    for e in graph.edge_indices() {
        let (s, t) = graph.edge_endpoints(e).expect("edge");
        if graph[e] && component[s.index()] == component[t.index()] {
            return Err(Error::NotStratified { cycle: negative_cycle(&graph, &component, s, t) });
        }
    }
    // tarjan_scc lists components in reverse topological order
    let mut level = vec![1usize; sccs.len()];
    for (i, scc) in sccs.iter().enumerate().rev() {
        for &n in scc {
            for e in graph.edges_directed(n, petgraph::Direction::Incoming) {
                use petgraph::visit::EdgeRef;
                let src = component[e.source().index()];
                if src != i {
                    level[i] = level[i].max(level[src] + usize::from(*e.weight()));
                }
            }
        }
    }
    let strata = nodes.iter().map(|(p, n)| (p.clone(), level[component[n.index()]])).collect();
    Ok(Stratification { strata })
}

fn negative_cycle(graph: &DiGraph<String, bool>, component: &[usize], s: NodeIndex, t: NodeIndex) -> Vec<String> {
    let c = component[s.index()];
    let mut prev: BTreeMap<NodeIndex, NodeIndex> = BTreeMap::new();
    let mut queue = VecDeque::from([t]);
    let mut seen = BTreeSet::from([t]);
    while let Some(v) = queue.pop_front() {
        if v == s {
            break;
        }
        for w in graph.neighbors(v) {
            if component[w.index()] == c && seen.insert(w) {
                prev.insert(w, v);
                queue.push_back(w);
            }
        }
    }
    let mut path = vec![s];
    let mut cur = s;
    while cur != t {
        cur = prev[&cur];
        path.push(cur);
    }
    path.reverse();
    let mut names: Vec<String> = vec![graph[s].clone()];
    names.extend(path.iter().map(|n| graph[*n].clone()));
    names
}

/// The model computed stratum by stratum; the program must be stratified.
pub fn stratified_model(program: &Program) -> Result<BTreeSet<GroundAtom>> {
    let strat = stratify(program)?;
    let gp = ground(program, Limits::default().max_ground_atoms)?;
    let mut by_stratum: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for (i, r) in gp.rules.iter().enumerate() {
        by_stratum.entry(strat.stratum(&gp.atom(r.head).predicate)).or_default().push(i);
    }
    let mut model = vec![false; gp.atom_count()];
    let mut done: Vec<usize> = Vec::new();
    for rules in by_stratum.values() {
        done.extend(rules.iter().copied());
        // negative atoms of this stratum are settled; earlier strata are re-derived unchanged
        model = gp.least_model(done.iter().copied(), &model);
    }
    Ok(model.iter().enumerate().filter(|(_, &t)| t).map(|(i, _)| gp.atom(i as u32).clone()).collect())
}
