//! Maximum cliques, maximum independent sets and maximal independent set
//! enumeration, all over adjacency bit sets.

use crate::bitset::BitSet;
use crate::error::Result;
use crate::graph::Graph;

/// Branch and bound with greedy colour-class bounds (MCQ ordering).
fn expand(adj: &[BitSet], current: &mut Vec<usize>, cand: BitSet, best: &mut Vec<usize>) {
    // colour the candidates; bound[i] is the colour number of order[i]
    let mut order = Vec::with_capacity(cand.count());
    let mut bound = Vec::with_capacity(order.capacity());
    let mut uncolored = cand.clone();
    let mut color = 0;
    while !uncolored.is_empty() {
        color += 1;
        let mut avail = uncolored.clone();
        while let Some(v) = avail.first() {
            avail.remove(v);
            avail.difference_with(&adj[v]);
            uncolored.remove(v);
            order.push(v);
            bound.push(color);
        }
    }
    let mut cand = cand;
    for i in (0..order.len()).rev() {
        if current.len() + bound[i] <= best.len() {
            return;
        }
        let v = order[i];
        current.push(v);
        let next = cand.intersection(&adj[v]);
        if next.is_empty() {
            if current.len() > best.len() {
                *best = current.clone();
            }
        } else {
            expand(adj, current, next, best);
        }
        current.pop();
        cand.remove(v);
    }
}

fn max_clique_bits(adj: &[BitSet]) -> Vec<usize> {
    let n = adj.len();
    let mut best = Vec::new();
    if n > 0 {
        expand(adj, &mut Vec::new(), BitSet::full(n), &mut best);
    }
    best.sort_unstable();
    best
}

pub fn max_clique(g: &Graph) -> Result<Vec<usize>> {
    g.require_loopless()?;
    Ok(max_clique_bits(&g.adjacency_bitsets()))
}

pub fn clique_number(g: &Graph) -> Result<usize> {
    Ok(max_clique(g)?.len())
}

pub fn max_independent_set(g: &Graph) -> Result<Vec<usize>> {
    g.require_loopless()?;
    Ok(max_clique_bits(&complement_bits(g)))
}

pub fn independence_number(g: &Graph) -> Result<usize> {
    Ok(max_independent_set(g)?.len())
}

fn complement_bits(g: &Graph) -> Vec<BitSet> {
    let n = g.n();
    g.adjacency_bitsets()
        .into_iter()
        .enumerate()
        .map(|(v, nb)| {
            let mut c = BitSet::full(n);
            c.difference_with(&nb);
            c.remove(v);
            c
        })
        .collect()
}

fn bron_kerbosch(
    adj: &[BitSet],
    r: &mut Vec<usize>,
    mut p: BitSet,
    mut x: BitSet,
    out: &mut Vec<Vec<usize>>,
) {
    if p.is_empty() {
        if x.is_empty() {
            let mut set = r.clone();
            set.sort_unstable();
            out.push(set);
        }
        return;
    }
    // pivot maximising |P ∩ N(u)| over P ∪ X, lowest index on ties
    let pivot = p
        .iter()
        .chain(x.iter())
        .max_by_key(|&u| (p.intersection_count(&adj[u]), std::cmp::Reverse(u)))
        .expect("P is non-empty");
    let mut branch = p.clone();
    branch.difference_with(&adj[pivot]);
    for v in branch.iter().collect::<Vec<_>>() {
        r.push(v);
        bron_kerbosch(
            adj,
            r,
            p.intersection(&adj[v]),
            x.intersection(&adj[v]),
            out,
        );
        r.pop();
        p.remove(v);
        x.insert(v);
    }
}

/// All maximal independent sets, each sorted, listed in lexicographic order.
pub fn maximal_independent_sets(g: &Graph) -> Result<Vec<Vec<usize>>> {
    g.require_loopless()?;
    let n = g.n();
    let mut out = Vec::new();
    if n == 0 {
        out.push(Vec::new());
        return Ok(out);
    }
    let adj = complement_bits(g);
    bron_kerbosch(
        &adj,
        &mut Vec::new(),
        BitSet::full(n),
        BitSet::new(n),
        &mut out,
    );
    out.sort();
    Ok(out)
}

/// Length of a shortest cycle, `None` for forests.
pub fn girth(g: &Graph) -> Result<Option<usize>> {
    g.require_loopless()?;
    let n = g.n();
    let mut best: Option<usize> = None;
    let mut dist = vec![usize::MAX; n];
    let mut parent = vec![usize::MAX; n];
    let mut queue = std::collections::VecDeque::new();
    for root in 0..n {
        dist.fill(usize::MAX);
        parent.fill(usize::MAX);
        dist[root] = 0;
        queue.clear();
        queue.push_back(root);
        'bfs: while let Some(u) = queue.pop_front() {
            if let Some(b) = best {
                if 2 * dist[u] >= b {
                    break 'bfs;
                }
            }
            for &w in g.neighbors(u) {
                if dist[w] == usize::MAX {
                    dist[w] = dist[u] + 1;
                    parent[w] = u;
                    queue.push_back(w);
                } else if parent[u] != w {
                    let len = dist[u] + dist[w] + 1;
                    best = Some(best.map_or(len, |b| b.min(len)));
                }
            }
        }
    }
    Ok(best)
}
