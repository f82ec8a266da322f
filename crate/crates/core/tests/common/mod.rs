//! Independent reference implementations used as test oracles. None of
//! these touch the stabilizer chain or the refinement-based search.

#![allow(dead_code)]

use std::collections::BTreeSet;

use circulant_core::Graph;

fn adjacency_matrix(g: &Graph) -> Vec<Vec<bool>> {
    let n = g.n();
    let mut m = vec![vec![false; n]; n];
    for (u, v) in g.edges() {
        m[u][v] = true;
        m[v][u] = true;
    }
    m
}

/// Every bijection of `[0, n)`, via Heap's algorithm, filtered to those that
/// map `g` onto `h`. Only sensible for `n <= 10`.
pub fn brute_force_isomorphisms(g: &Graph, h: &Graph) -> Vec<Vec<usize>> {
    assert_eq!(g.n(), h.n());
    let n = g.n();
    let edges = g.edges();
    let target = adjacency_matrix(h);
    let mut out = Vec::new();
    if edges.len() != h.edge_count() {
        return out;
    }
    let mut perm: Vec<usize> = (0..n).collect();
    let mut c = vec![0usize; n];
    let mut check = |p: &[usize]| {
        if edges.iter().all(|&(u, v)| target[p[u]][p[v]]) {
            out.push(p.to_vec());
        }
    };
    check(&perm);
    let mut i = 0;
    while i < n {
        if c[i] < i {
            if i % 2 == 0 {
                perm.swap(0, i);
            } else {
                perm.swap(c[i], i);
            }
            check(&perm);
            c[i] += 1;
            i = 0;
        } else {
            c[i] = 0;
            i += 1;
        }
    }
    out
}

pub fn brute_force_automorphisms(g: &Graph) -> Vec<Vec<usize>> {
    brute_force_isomorphisms(g, g)
}

/// Plain vertex-by-vertex backtracking with no refinement: vertex `i` is
/// mapped only after `0..i`, and each choice must agree with adjacency to
/// every earlier vertex.
pub fn naive_automorphisms(g: &Graph) -> Vec<Vec<usize>> {
    let n = g.n();
    let adj = adjacency_matrix(g);
    let mut image = vec![usize::MAX; n];
    let mut used = vec![false; n];
    let mut out = Vec::new();
    fn go(
        i: usize,
        g: &Graph,
        adj: &[Vec<bool>],
        image: &mut Vec<usize>,
        used: &mut Vec<bool>,
        out: &mut Vec<Vec<usize>>,
    ) {
        let n = image.len();
        if i == n {
            out.push(image.clone());
            return;
        }
        for t in 0..n {
            if used[t] || g.degree(i) != g.degree(t) {
                continue;
            }
            if (0..i).all(|j| adj[i][j] == adj[t][image[j]]) {
                image[i] = t;
                used[t] = true;
                go(i + 1, g, adj, image, used, out);
                used[t] = false;
            }
        }
        image[i] = usize::MAX;
    }
    go(0, g, &adj, &mut image, &mut used, &mut out);
    out
}

/// Cycle lengths of an image vector, computed directly.
pub fn cycle_lengths(p: &[usize]) -> Vec<usize> {
    let mut seen = vec![false; p.len()];
    let mut lens = Vec::new();
    for s in 0..p.len() {
        if seen[s] {
            continue;
        }
        let mut len = 0;
        let mut x = s;
        while !seen[x] {
            seen[x] = true;
            x = p[x];
            len += 1;
        }
        lens.push(len);
    }
    lens
}

pub fn semiregular_orbit_count(p: &[usize]) -> Option<usize> {
    let lens = cycle_lengths(p);
    if lens.iter().all(|&l| l == lens[0]) {
        Some(lens.len())
    } else {
        None
    }
}

/// Spectrum straight from the definition over an explicit list of automorphisms.
pub fn spectrum_of(autos: &[Vec<usize>]) -> BTreeSet<usize> {
    autos.iter().filter_map(|p| semiregular_orbit_count(p)).collect()
}

pub fn girth_by_brute_force(g: &Graph) -> Option<usize> {
    let n = g.n();
    let mut best: Option<usize> = None;
    for (u, v) in g.edges() {
        // shortest u-v path avoiding the edge itself, plus that edge
        let mut dist = vec![usize::MAX; n];
        dist[u] = 0;
        let mut queue = std::collections::VecDeque::from([u]);
        while let Some(x) = queue.pop_front() {
            for &y in g.neighbors(x) {
                if (x == u && y == v) || (x == v && y == u) || dist[y] != usize::MAX {
                    continue;
                }
                dist[y] = dist[x] + 1;
                queue.push_back(y);
            }
        }
        if dist[v] != usize::MAX {
            let len = dist[v] + 1;
            best = Some(best.map_or(len, |b| b.min(len)));
        }
    }
    best
}
