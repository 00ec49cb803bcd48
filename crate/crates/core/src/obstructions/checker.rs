//! Independent re-validation of certificates from raw matrices.
//!
//! Nothing here calls the generators in the sibling modules: cycles are found
//! by brute force over vertex subsets and reachability by transitive closure.

use std::collections::BTreeMap;

use crate::quiver::{ExchangeMatrix, IceQuiver};

use super::{Coloring, DiagramCycle, LaCertificate, LaNode, NoMgsCertificate};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("certificate rejected: {0}")]
pub struct CheckError(pub String);

fn fail<T>(msg: impl Into<String>) -> Result<T, CheckError> {
    Err(CheckError(msg.into()))
}

fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

fn in_range(b: &ExchangeMatrix, vs: &[usize]) -> Result<(), CheckError> {
    match vs.iter().find(|&&v| v >= b.n()) {
        Some(v) => fail(format!("vertex {} out of range", v + 1)),
        None => Ok(()),
    }
}

fn distinct(vs: &[usize]) -> bool {
    let mut sorted = vs.to_vec();
    sorted.sort_unstable();
    sorted.windows(2).all(|w| w[0] != w[1])
}

pub fn check_no_mgs_certificate(
    b: &ExchangeMatrix,
    cert: &NoMgsCertificate,
) -> Result<(), CheckError> {
    match cert {
        NoMgsCertificate::MultipleArrowCycle { cycle } => {
            in_range(b, cycle)?;
            if cycle.len() < 2 || !distinct(cycle) {
                return fail("cycle must list at least two distinct vertices");
            }
            for t in 0..cycle.len() {
                let (u, v) = (cycle[t], cycle[(t + 1) % cycle.len()]);
                if b.get(u, v) < 2 {
                    return fail(format!("arrow {} -> {} is not multiple", u + 1, v + 1));
                }
            }
            Ok(())
        }
        NoMgsCertificate::ClassLevel {
            column_gcds,
            refutation,
        } => {
            let n = b.n();
            let actual: Vec<u64> = (0..n)
                .map(|j| (0..n).fold(0, |g, i| gcd(g, b.get(i, j).unsigned_abs())))
                .collect();
            if &actual != column_gcds {
                return fail(format!("column gcds are {actual:?}, not {column_gcds:?}"));
            }
            if actual.iter().any(|&g| g < 2) {
                return fail("some column gcd is below 2");
            }
            check_refutation(b, refutation)
        }
    }
}

/// Undirected edge key.
fn edge(u: usize, v: usize) -> (usize, usize) {
    (u.min(v), u.max(v))
}

fn check_chordless(b: &ExchangeMatrix, c: &DiagramCycle) -> Result<(), CheckError> {
    let vs = &c.vertices;
    in_range(b, vs)?;
    let k = vs.len();
    if k < 3 || !distinct(vs) {
        return fail("a cycle needs at least three distinct vertices");
    }
    for s in 0..k {
        for t in (s + 1)..k {
            let consecutive = t == s + 1 || (s == 0 && t == k - 1);
            let joined = b.get(vs[s], vs[t]) != 0;
            if consecutive && !joined {
                return fail(format!("{} and {} are not adjacent", vs[s] + 1, vs[t] + 1));
            }
            if !consecutive && joined {
                return fail(format!("chord between {} and {}", vs[s] + 1, vs[t] + 1));
            }
        }
    }
    let forward = (0..k).all(|t| b.get(vs[t], vs[(t + 1) % k]) > 0);
    let backward = (0..k).all(|t| b.get(vs[t], vs[(t + 1) % k]) < 0);
    if c.oriented != (forward || backward) {
        return fail("orientation flag is wrong");
    }
    Ok(())
}

/// The listed conditions add up to `0 = 1` over GF(2): every edge is used an
/// even number of times and an odd number of the cycles are oriented.
fn check_refutation(b: &ExchangeMatrix, cycles: &[DiagramCycle]) -> Result<(), CheckError> {
    let mut uses: BTreeMap<(usize, usize), usize> = BTreeMap::new();
    let mut rhs = 0;
    for c in cycles {
        check_chordless(b, c)?;
        let k = c.vertices.len();
        for t in 0..k {
            *uses.entry(edge(c.vertices[t], c.vertices[(t + 1) % k])).or_default() += 1;
        }
        rhs += usize::from(c.oriented);
    }
    if uses.values().any(|u| u % 2 == 1) {
        return fail("refutation cycles do not cancel mod 2");
    }
    if rhs % 2 == 0 {
        return fail("refutation has an even number of oriented cycles");
    }
    Ok(())
}

/// All chordless cycles by brute force over vertex subsets: a subset spans a
/// chordless cycle iff its induced undirected graph is connected and
/// 2-regular. Returns edge lists with the orientation flag.
fn induced_cycles(b: &ExchangeMatrix) -> Vec<(Vec<(usize, usize)>, bool)> {
    let n = b.n();
    assert!(n <= 20, "brute-force cycle enumeration is limited to 20 vertices");
    let mut out = Vec::new();
    for mask in 0u32..(1 << n) {
        if mask.count_ones() < 3 {
            continue;
        }
        let vs: Vec<usize> = (0..n).filter(|&v| mask >> v & 1 == 1).collect();
        let nbrs = |v: usize| -> Vec<usize> {
            vs.iter().copied().filter(|&w| b.get(v, w) != 0).collect()
        };
        if vs.iter().any(|&v| nbrs(v).len() != 2) {
            continue;
        }
        let mut order = vec![vs[0]];
        let mut prev = usize::MAX;
        let mut cur = vs[0];
        loop {
            let next = nbrs(cur).into_iter().find(|&w| w != prev).expect("degree two");
            if next == vs[0] {
                break;
            }
            order.push(next);
            (prev, cur) = (cur, next);
        }
        if order.len() != vs.len() {
            continue;
        }
        let k = order.len();
        let edges: Vec<(usize, usize)> =
            (0..k).map(|t| edge(order[t], order[(t + 1) % k])).collect();
        let forward = (0..k).all(|t| b.get(order[t], order[(t + 1) % k]) > 0);
        let backward = (0..k).all(|t| b.get(order[t], order[(t + 1) % k]) < 0);
        out.push((edges, forward || backward));
    }
    out
}

pub fn check_coloring(b: &ExchangeMatrix, coloring: &Coloring) -> Result<(), CheckError> {
    let n = b.n();
    let mut colors: BTreeMap<(usize, usize), u8> = BTreeMap::new();
    for arc in &coloring.arcs {
        in_range(b, &[arc.source, arc.target])?;
        if b.get(arc.source, arc.target) <= 0 {
            return fail(format!("{} -> {} is not an arc", arc.source + 1, arc.target + 1));
        }
        if arc.color > 1 {
            return fail("colours must be 0 or 1");
        }
        if colors.insert(edge(arc.source, arc.target), arc.color).is_some() {
            return fail("arc coloured twice");
        }
    }
    let arcs = (0..n)
        .flat_map(|i| (0..n).map(move |j| (i, j)))
        .filter(|&(i, j)| b.get(i, j) > 0)
        .count();
    if arcs != colors.len() {
        return fail("not every arc is coloured");
    }
    for (edges, oriented) in induced_cycles(b) {
        let sum: u32 = edges.iter().map(|e| u32::from(colors[e])).sum();
        if sum % 2 != u32::from(oriented) {
            return fail(format!("cycle condition fails on {edges:?}"));
        }
    }
    Ok(())
}

/// Reachability by Floyd-Warshall closure on the mutable part.
fn closure(b: &ExchangeMatrix) -> Vec<Vec<bool>> {
    let n = b.n();
    let mut r: Vec<Vec<bool>> = (0..n)
        .map(|i| (0..n).map(|j| b.get(i, j) > 0).collect())
        .collect();
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
    r
}

/// `i -> j` is on a bi-infinite path iff some vertex `c` on a cycle reaches
/// (or is) `i`, and `j` reaches (or is) some vertex `d` on a cycle.
pub fn on_bi_infinite_path(b: &ExchangeMatrix, i: usize, j: usize) -> bool {
    let r = closure(b);
    let n = b.n();
    let on_cycle = |v: usize| r[v][v];
    let up = (0..n).any(|c| on_cycle(c) && (c == i || r[c][i]));
    let down = (0..n).any(|d| on_cycle(d) && (d == j || r[j][d]));
    up && down
}

pub fn check_la_certificate(m: &IceQuiver, cert: &LaCertificate) -> Result<(), CheckError> {
    if &cert.quiver != m {
        return fail("certificate is for a different quiver");
    }
    let labels: Vec<usize> = (0..m.n()).collect();
    check_node(m, &labels, &cert.root)
}

fn check_node(start: &IceQuiver, labels: &[usize], node: &LaNode) -> Result<(), CheckError> {
    let (vertices, sequence, quiver) = match node {
        LaNode::Leaf {
            vertices,
            sequence,
            quiver,
        }
        | LaNode::Split {
            vertices,
            sequence,
            quiver,
            ..
        } => (vertices, sequence, quiver),
    };
    if vertices != labels {
        return fail(format!("node lists vertices {vertices:?}, expected {labels:?}"));
    }
    let position = |label: usize| labels.iter().position(|&l| l == label);
    let mut cur = start.clone();
    for &label in sequence.steps() {
        let Some(k) = position(label) else {
            return fail(format!("vertex {} is not mutable here", label + 1));
        };
        cur = cur.mutate(k).map_err(|e| CheckError(e.to_string()))?;
    }
    if &cur != quiver {
        return fail("replayed quiver differs from the snapshot");
    }
    match node {
        LaNode::Leaf { .. } => {
            if !cur.principal().is_acyclic() {
                return fail("leaf quiver is not acyclic");
            }
            Ok(())
        }
        LaNode::Split {
            arrow,
            freeze_source,
            freeze_target,
            ..
        } => {
            let (Some(i), Some(j)) = (position(arrow.0), position(arrow.1)) else {
                return fail("arrow endpoint is not mutable here");
            };
            if cur.principal().get(i, j) <= 0 {
                return fail(format!("no arrow {} -> {}", arrow.0 + 1, arrow.1 + 1));
            }
            if on_bi_infinite_path(cur.principal(), i, j) {
                return fail("arrow lies on a bi-infinite path");
            }
            for (v, child) in [(i, freeze_source), (j, freeze_target)] {
                let frozen = cur.freeze(&[v]).map_err(|e| CheckError(e.to_string()))?;
                let mut rest = labels.to_vec();
                rest.remove(v);
                check_node(&frozen, &rest, child)?;
            }
            Ok(())
        }
    }
}
