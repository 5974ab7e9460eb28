//! 2-truncated cycles: cyclic arrow sequences whose consecutive products,
//! including the wrap-around, all vanish.

use std::collections::VecDeque;

use petgraph::algo::tarjan_scc;
use petgraph::graph::{DiGraph, NodeIndex};
use serde::Serialize;

use crate::algebra::FDAlgebra;
use crate::linalg::matrix::is_zero_vector;

/// Evaluation record for one product `later * earlier`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ProductRecord {
    pub earlier: String,
    pub later: String,
    /// Rendering of the computed product; `"0"` in a valid certificate.
    pub value: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TruncatedCycleCertificate {
    /// Arrow indices in traversal order.
    pub arrows: Vec<usize>,
    pub names: Vec<String>,
    pub base_vertex: String,
    pub products: Vec<ProductRecord>,
}

/// Graph on arrows with an edge `a -> b` when `b` can follow `a` and
/// `b * a = 0`. Nodes carry arrow indices.
pub fn zero_composition_graph(a: &FDAlgebra) -> DiGraph<usize, ()> {
    restricted_graph(a, &(0..a.arrows().len()).collect::<Vec<_>>())
}

fn restricted_graph(a: &FDAlgebra, allowed: &[usize]) -> DiGraph<usize, ()> {
    let arrows = a.arrows();
    let mut g = DiGraph::new();
    let nodes: Vec<NodeIndex> = allowed.iter().map(|&i| g.add_node(i)).collect();
    for (x, &i) in allowed.iter().enumerate() {
        for (y, &j) in allowed.iter().enumerate() {
            if arrows[i].target == arrows[j].source
                && is_zero_vector(&a.mul(&arrows[j].element, &arrows[i].element))
            {
                g.add_edge(nodes[x], nodes[y], ());
            }
        }
    }
    g
}

/// Least index sequence among the shortest cycles of the zero composition
/// graph, re-verified by multiplication.
pub fn find_two_truncated_cycle(a: &FDAlgebra) -> Option<TruncatedCycleCertificate> {
    find_among(a, &(0..a.arrows().len()).collect::<Vec<_>>())
}

/// Same search using only the listed arrows.
pub fn find_two_truncated_cycle_among(a: &FDAlgebra, allowed: &[usize]) -> Option<TruncatedCycleCertificate> {
    let mut allowed = allowed.to_vec();
    allowed.sort_unstable();
    allowed.dedup();
    find_among(a, &allowed)
}

fn find_among(a: &FDAlgebra, allowed: &[usize]) -> Option<TruncatedCycleCertificate> {
    let g = restricted_graph(a, allowed);
    let n = g.node_count();
    let adj: Vec<Vec<usize>> = (0..n)
        .map(|u| {
            let mut v: Vec<usize> = g.neighbors(NodeIndex::new(u)).map(|x| x.index()).collect();
            v.sort_unstable();
            v
        })
        .collect();
    let mut radj = vec![Vec::new(); n];
    for (u, vs) in adj.iter().enumerate() {
        for &v in vs {
            radj[v].push(u);
        }
    }
    let mut on_cycle = vec![false; n];
    for comp in tarjan_scc(&g) {
        let cyclic = comp.len() > 1 || adj[comp[0].index()].contains(&comp[0].index());
        if cyclic {
            for x in comp {
                on_cycle[x.index()] = true;
            }
        }
    }
    // shortest cycle through each candidate start: 1 + dist(s -> v) over v -> s
    let mut best: Option<(usize, usize)> = None;
    for s in (0..n).filter(|&s| on_cycle[s]) {
        let dist = bfs(&adj, s);
        let len = radj[s]
            .iter()
            .filter_map(|&v| dist[v].map(|d| d + 1))
            .min()
            .expect("node on a cycle");
        if best.is_none_or(|(m, _)| len < m) {
            best = Some((len, s));
        }
    }
    let (m, s) = best?;
    let to_start = bfs(&radj, s);
    let mut cycle = vec![s];
    let mut u = s;
    for k in 1..m {
        let remaining = m - k;
        u = *adj[u]
            .iter()
            .find(|&&v| v != s && to_start[v] == Some(remaining))
            .expect("greedy step stays on a shortest cycle");
        cycle.push(u);
    }
    debug_assert!(adj[u].contains(&s));
    let arrows: Vec<usize> = cycle.iter().map(|&x| g[NodeIndex::new(x)]).collect();
    let cert = certificate(a, arrows);
    verify_certificate(a, &cert).ok()?;
    Some(cert)
}

fn bfs(adj: &[Vec<usize>], s: usize) -> Vec<Option<usize>> {
    let mut dist = vec![None; adj.len()];
    dist[s] = Some(0);
    let mut queue = VecDeque::from([s]);
    while let Some(u) = queue.pop_front() {
        for &v in &adj[u] {
            if dist[v].is_none() {
                dist[v] = Some(dist[u].unwrap() + 1);
                queue.push_back(v);
            }
        }
    }
    dist
}

fn certificate(a: &FDAlgebra, arrows: Vec<usize>) -> TruncatedCycleCertificate {
    let reps = a.arrows();
    let n = arrows.len();
    let products = (0..n)
        .map(|i| {
            let earlier = &reps[arrows[i]];
            let later = &reps[arrows[(i + 1) % n]];
            ProductRecord {
                earlier: earlier.name.clone(),
                later: later.name.clone(),
                value: a.render(&a.mul(&later.element, &earlier.element)),
            }
        })
        .collect();
    TruncatedCycleCertificate {
        names: arrows.iter().map(|&i| reps[i].name.clone()).collect(),
        base_vertex: a.vertex_names()[reps[arrows[0]].source].clone(),
        arrows,
        products,
    }
}

/// Independent check of a certificate using only [`FDAlgebra::multiply`]
/// and the arrow endpoints.
pub fn verify_certificate(a: &FDAlgebra, cert: &TruncatedCycleCertificate) -> Result<(), String> {
    let reps = a.arrows();
    let n = cert.arrows.len();
    if n == 0 {
        return Err("empty cycle".into());
    }
    if cert.names.len() != n || cert.products.len() != n {
        return Err("certificate lengths disagree".into());
    }
    for (k, &i) in cert.arrows.iter().enumerate() {
        let Some(x) = reps.get(i) else {
            return Err(format!("arrow index {i} out of range"));
        };
        if x.name != cert.names[k] {
            return Err(format!("arrow {i} is `{}`, not `{}`", x.name, cert.names[k]));
        }
    }
    for k in 0..n {
        let earlier = &reps[cert.arrows[k]];
        let later = &reps[cert.arrows[(k + 1) % n]];
        if earlier.target != later.source {
            return Err(format!("`{}` does not follow `{}`", later.name, earlier.name));
        }
        let p = a
            .multiply(&later.element, &earlier.element)
            .map_err(|e| e.to_string())?;
        if !is_zero_vector(&p) {
            return Err(format!("{} * {} = {}", later.name, earlier.name, a.render(&p)));
        }
        if cert.products[k].value != "0" {
            return Err(format!("record {k} claims a nonzero product"));
        }
    }
    Ok(())
}
