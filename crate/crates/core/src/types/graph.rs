//! Strongly connected components and condensation of small digraphs.

use alloc::vec;
use alloc::vec::Vec;

/// Tarjan's algorithm, iterative. Components come out in reverse
/// topological order of the condensation (sinks first).
pub fn tarjan_scc(adj: &[Vec<usize>]) -> Vec<Vec<usize>> {
    let n = adj.len();
    let mut index = vec![usize::MAX; n];
    let mut low = vec![0usize; n];
    let mut on_stack = vec![false; n];
    let mut stack: Vec<usize> = Vec::new();
    let mut comps = Vec::new();
    let mut counter = 0usize;
    // (vertex, next edge to look at)
    let mut call: Vec<(usize, usize)> = Vec::new();

    for start in 0..n {
        if index[start] != usize::MAX {
            continue;
        }
        call.push((start, 0));
        index[start] = counter;
        low[start] = counter;
        counter += 1;
        stack.push(start);
        on_stack[start] = true;

        while let Some(&mut (v, ref mut next)) = call.last_mut() {
            if let Some(&w) = adj[v].get(*next) {
                *next += 1;
                if index[w] == usize::MAX {
                    index[w] = counter;
                    low[w] = counter;
                    counter += 1;
                    stack.push(w);
                    on_stack[w] = true;
                    call.push((w, 0));
                } else if on_stack[w] {
                    low[v] = low[v].min(index[w]);
                }
                continue;
            }
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
                comps.push(comp);
            }
        }
    }
    comps
}

/// SCC decomposition with the condensation DAG.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Condensation {
    /// Vertex lists, each sorted; component ids index this vector.
    pub components: Vec<Vec<usize>>,
    /// Component id of every vertex.
    pub component_of: Vec<usize>,
    /// Deduplicated, sorted edges between distinct components.
    pub dag_edges: Vec<(usize, usize)>,
}

impl Condensation {
    pub fn new(adj: &[Vec<usize>]) -> Self {
        let components = tarjan_scc(adj);
        let mut component_of = vec![0; adj.len()];
        for (c, comp) in components.iter().enumerate() {
            for &v in comp {
                component_of[v] = c;
            }
        }
        let mut dag_edges: Vec<(usize, usize)> = adj
            .iter()
            .enumerate()
            .flat_map(|(v, ws)| ws.iter().map(move |&w| (v, w)))
            .map(|(v, w)| (component_of[v], component_of[w]))
            .filter(|(a, b)| a != b)
            .collect();
        dag_edges.sort_unstable();
        dag_edges.dedup();
        Self {
            components,
            component_of,
            dag_edges,
        }
    }

    /// Components with no edge leaving them.
    pub fn terminal_components(&self) -> Vec<usize> {
        let mut has_out = vec![false; self.components.len()];
        for &(a, _) in &self.dag_edges {
            has_out[a] = true;
        }
        (0..self.components.len()).filter(|&c| !has_out[c]).collect()
    }
}

/// Whether the subgraph induced on `vertices` is strongly connected.
pub fn induced_strongly_connected(adj: &[Vec<usize>], vertices: &[usize]) -> bool {
    if vertices.is_empty() {
        return false;
    }
    let mut local = vec![usize::MAX; adj.len()];
    for (i, &v) in vertices.iter().enumerate() {
        local[v] = i;
    }
    let sub: Vec<Vec<usize>> = vertices
        .iter()
        .map(|&v| adj[v].iter().filter(|&&w| local[w] != usize::MAX).map(|&w| local[w]).collect())
        .collect();
    tarjan_scc(&sub).len() == 1
}
