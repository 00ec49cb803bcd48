//! Covering pairs and local-acyclicity certificate trees.

use std::collections::HashSet;

use petgraph::algo::tarjan_scc;
use petgraph::graph::{DiGraph, NodeIndex};
use petgraph::visit::{Dfs, Reversed};
use serde::{Deserialize, Serialize};

use crate::quiver::IceQuiver;
use crate::sequence::MutationSequence;

/// Arrows `i -> j` of the mutable part that lie on no bi-infinite path,
/// i.e. it is not the case that a cycle reaches `i` and `j` reaches a cycle.
/// Sorted, 0-based.
pub fn covering_pairs(q: &IceQuiver) -> Vec<(usize, usize)> {
    let b = q.principal();
    let n = b.n();
    let mut g: DiGraph<(), ()> = DiGraph::with_capacity(n, 0);
    let nodes: Vec<NodeIndex> = (0..n).map(|_| g.add_node(())).collect();
    let arrows: Vec<(usize, usize)> = b.arrow_list().into_iter().map(|(i, j, _)| (i, j)).collect();
    for &(i, j) in &arrows {
        g.add_edge(nodes[i], nodes[j], ());
    }
    let cyclic: Vec<NodeIndex> = tarjan_scc(&g)
        .into_iter()
        .filter(|scc| scc.len() > 1)
        .flatten()
        .collect();

    let mut below = vec![false; n];
    let mut dfs = Dfs::empty(&g);
    dfs.stack.extend(cyclic.iter().copied());
    while let Some(v) = dfs.next(&g) {
        below[v.index()] = true;
    }
    let rev = Reversed(&g);
    let mut above = vec![false; n];
    let mut dfs = Dfs::empty(rev);
    dfs.stack.extend(cyclic.iter().copied());
    while let Some(v) = dfs.next(rev) {
        above[v.index()] = true;
    }

    arrows
        .into_iter()
        .filter(|&(i, j)| !(below[i] && above[j]))
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct CertificateCaps {
    /// Seeds up to this many mutations from a node's quiver are searched.
    pub mutation_depth: usize,
    /// Maximum number of nested freezings.
    pub recursion_depth: usize,
}

impl Default for CertificateCaps {
    fn default() -> Self {
        Self {
            mutation_depth: 2,
            recursion_depth: 6,
        }
    }
}

/// A node of a local-acyclicity certificate.
///
/// Vertex labels are those of the quiver the certificate was built for.
/// `vertices` lists the labels of the node's mutable vertices in row order,
/// `sequence` is applied to the node's starting quiver, and `quiver` is the
/// result. Children start from `quiver` with one endpoint of `arrow` frozen.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "node", rename_all = "snake_case")]
pub enum LaNode {
    Leaf {
        #[serde(with = "crate::serde_util::one_based")]
        vertices: Vec<usize>,
        sequence: MutationSequence,
        quiver: IceQuiver,
    },
    Split {
        #[serde(with = "crate::serde_util::one_based")]
        vertices: Vec<usize>,
        sequence: MutationSequence,
        quiver: IceQuiver,
        #[serde(with = "crate::serde_util::one_based_pair")]
        arrow: (usize, usize),
        freeze_source: Box<LaNode>,
        freeze_target: Box<LaNode>,
    },
}

impl LaNode {
    pub fn sequence(&self) -> &MutationSequence {
        match self {
            Self::Leaf { sequence, .. } | Self::Split { sequence, .. } => sequence,
        }
    }

    pub fn is_leaf(&self) -> bool {
        matches!(self, Self::Leaf { .. })
    }

    pub fn leaf_count(&self) -> usize {
        match self {
            Self::Leaf { .. } => 1,
            Self::Split {
                freeze_source,
                freeze_target,
                ..
            } => freeze_source.leaf_count() + freeze_target.leaf_count(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LaCertificate {
    pub quiver: IceQuiver,
    pub root: LaNode,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "result", rename_all = "snake_case")]
pub enum LaOutcome {
    Certified { certificate: LaCertificate },
    Unknown,
}

impl LaOutcome {
    pub fn certificate(&self) -> Option<&LaCertificate> {
        match self {
            Self::Certified { certificate } => Some(certificate),
            Self::Unknown => None,
        }
    }
}

/// Searches for a certificate that the cluster algebra of `m` is
/// locally acyclic: every node is either acyclic after a few mutations, or
/// is split along a covering pair into the two freezings at its endpoints.
///
/// At each node the seeds within `mutation_depth` are visited in breadth
/// first order; an acyclic seed ends the branch, otherwise covering pairs are
/// tried seed by seed.
pub fn local_acyclicity_certificate(m: &IceQuiver, caps: CertificateCaps) -> LaOutcome {
    let labels: Vec<usize> = (0..m.n()).collect();
    match certify(m, &labels, caps, caps.recursion_depth) {
        Some(root) => LaOutcome::Certified {
            certificate: LaCertificate {
                quiver: m.clone(),
                root,
            },
        },
        None => LaOutcome::Unknown,
    }
}

fn seeds_within(q: &IceQuiver, depth: usize) -> Vec<(Vec<usize>, IceQuiver)> {
    let mut seen = HashSet::from([q.clone()]);
    let mut out = vec![(Vec::new(), q.clone())];
    let mut start = 0;
    for _ in 0..depth {
        let end = out.len();
        for idx in start..end {
            for k in 0..q.n() {
                if out[idx].0.last() == Some(&k) {
                    continue;
                }
                let Ok(next) = out[idx].1.mutate(k) else {
                    continue;
                };
                if seen.insert(next.clone()) {
                    let mut path = out[idx].0.clone();
                    path.push(k);
                    out.push((path, next));
                }
            }
        }
        start = end;
    }
    out
}

fn certify(
    q: &IceQuiver,
    labels: &[usize],
    caps: CertificateCaps,
    depth_left: usize,
) -> Option<LaNode> {
    let seeds = seeds_within(q, caps.mutation_depth);
    let relabel = |path: &[usize]| MutationSequence(path.iter().map(|&k| labels[k]).collect());
    if let Some((path, s)) = seeds.iter().find(|(_, s)| s.principal().is_acyclic()) {
        return Some(LaNode::Leaf {
            vertices: labels.to_vec(),
            sequence: relabel(path),
            quiver: s.clone(),
        });
    }
    if depth_left == 0 {
        return None;
    }
    for (path, s) in &seeds {
        for (i, j) in covering_pairs(s) {
            let Some(source) = freeze_one(s, labels, i)
                .and_then(|(f, l)| certify(&f, &l, caps, depth_left - 1))
            else {
                continue;
            };
            let Some(target) = freeze_one(s, labels, j)
                .and_then(|(f, l)| certify(&f, &l, caps, depth_left - 1))
            else {
                continue;
            };
            return Some(LaNode::Split {
                vertices: labels.to_vec(),
                sequence: relabel(path),
                quiver: s.clone(),
                arrow: (labels[i], labels[j]),
                freeze_source: Box::new(source),
                freeze_target: Box::new(target),
            });
        }
    }
    None
}

fn freeze_one(q: &IceQuiver, labels: &[usize], v: usize) -> Option<(IceQuiver, Vec<usize>)> {
    let frozen = q.freeze(&[v]).ok()?;
    let mut rest = labels.to_vec();
    rest.remove(v);
    Some((frozen, rest))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quiver::ExchangeMatrix;

    fn bce() -> ExchangeMatrix {
        ExchangeMatrix::new(vec![
            vec![0, 2, 2, 4],
            vec![-2, 0, -6, 2],
            vec![-2, 6, 0, -2],
            vec![-4, -2, 2, 0],
        ])
        .unwrap()
    }

    fn markov() -> ExchangeMatrix {
        ExchangeMatrix::from_arrows(3, [(0, 1, 2), (1, 2, 2), (2, 0, 2)]).unwrap()
    }

    #[test]
    fn pairs_bce() {
        let pairs = covering_pairs(&IceQuiver::from_principal(bce()));
        assert_eq!(pairs, vec![(0, 1), (0, 2), (0, 3)]);
    }

    #[test]
    fn pairs_markov_empty() {
        assert!(covering_pairs(&IceQuiver::from_principal(markov())).is_empty());
    }

    #[test]
    fn pendant_into_triangle() {
        // 4 -> 1, with 1 -> 2 -> 3 -> 1
        let b = ExchangeMatrix::from_arrows(4, [(0, 1, 1), (1, 2, 1), (2, 0, 1), (3, 0, 1)]).unwrap();
        assert_eq!(covering_pairs(&IceQuiver::from_principal(b)), vec![(3, 0)]);
        // 1 -> 4 out of the triangle and 4 -> 5: nothing downstream of 4
        let b = ExchangeMatrix::from_arrows(5, [(0, 1, 1), (1, 2, 1), (2, 0, 1), (0, 3, 1), (3, 4, 1)])
            .unwrap();
        assert_eq!(
            covering_pairs(&IceQuiver::from_principal(b)),
            vec![(0, 3), (3, 4)]
        );
    }

    #[test]
    fn bce_certificate_shape() {
        let out = local_acyclicity_certificate(&IceQuiver::from_principal(bce()), CertificateCaps::default());
        let cert = out.certificate().expect("certified");
        let LaNode::Split {
            arrow,
            sequence,
            freeze_source,
            freeze_target,
            ..
        } = &cert.root
        else {
            panic!("root should split");
        };
        assert_eq!(*arrow, (0, 1));
        assert!(sequence.is_empty());
        match freeze_target.as_ref() {
            LaNode::Leaf {
                vertices, sequence, ..
            } => {
                assert_eq!(vertices, &vec![0, 2, 3]);
                assert!(sequence.is_empty());
            }
            other => panic!("unexpected {other:?}"),
        }
        match freeze_source.as_ref() {
            LaNode::Leaf {
                vertices,
                sequence,
                quiver,
            } => {
                assert_eq!(vertices, &vec![1, 2, 3]);
                assert_eq!(sequence.to_string(), "4");
                assert!(quiver.principal().is_acyclic());
                assert_eq!(quiver.frozen_count(), 1);
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn acyclic_is_single_leaf() {
        let b = ExchangeMatrix::from_arrows(3, [(0, 1, 3), (1, 2, 1)]).unwrap();
        let out = local_acyclicity_certificate(&IceQuiver::from_principal(b), CertificateCaps::default());
        let root = &out.certificate().unwrap().root;
        assert!(root.is_leaf());
        assert!(root.sequence().is_empty());
    }

    #[test]
    fn markov_unknown() {
        let out = local_acyclicity_certificate(&IceQuiver::from_principal(markov()), CertificateCaps::default());
        assert_eq!(out, LaOutcome::Unknown);
    }
}
