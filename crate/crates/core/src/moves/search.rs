//! Bounded equivalence search.
//!
//! Invariants are compared first; a difference settles the question. Otherwise
//! both diagrams are simplified and a bidirectional breadth-first search over
//! all moves runs from the two sides, deduplicating states by canonical form.
//! Frontier expansion is data-parallel; merging is sequential in frontier
//! order, so the verdict does not depend on the execution mode.

use std::collections::HashMap;

use super::{all_moves, apply_move, simplify_with_trace, Move};
use crate::diagram::{CanonicalKey, GaussDiagram};
use crate::error::{Error, Result};
use crate::exec::{self, Execution};
use crate::invariants::{covering, odd_writhe, writhe_polynomial};

/// Coverings `r = 0..=COVERING_CHECK_MAX` are compared before searching.
const COVERING_CHECK_MAX: i64 = 8;
/// Search states per side before giving up with [`EquivalenceVerdict::Unknown`].
const MAX_STATES: usize = 400_000;

/// An invariant on which two diagrams differ.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Separation {
    pub invariant: String,
    pub left: String,
    pub right: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum EquivalenceVerdict {
    /// Replaying `left` from the first diagram and `right` from the second
    /// ends in isomorphic diagrams.
    Equivalent {
        left: Vec<Move>,
        right: Vec<Move>,
    },
    Distinct(Separation),
    Unknown,
}

impl EquivalenceVerdict {
    pub fn is_equivalent(&self) -> bool {
        matches!(self, EquivalenceVerdict::Equivalent { .. })
    }

    pub fn is_distinct(&self) -> bool {
        matches!(self, EquivalenceVerdict::Distinct(_))
    }
}

fn separate(g: &GaussDiagram, h: &GaussDiagram) -> Option<Separation> {
    let differ = |invariant: String, a: String, b: String| {
        (a != b).then_some(Separation {
            invariant,
            left: a,
            right: b,
        })
    };
    let poly = |d: &GaussDiagram| writhe_polynomial(d).pretty();
    differ("writhe polynomial".into(), poly(g), poly(h))
        .or_else(|| {
            differ(
                "odd writhe".into(),
                odd_writhe(g).to_string(),
                odd_writhe(h).to_string(),
            )
        })
        .or_else(|| {
            (0..=COVERING_CHECK_MAX).find_map(|r| {
                let cg = covering(g, r).expect("r >= 0");
                let ch = covering(h, r).expect("r >= 0");
                differ(format!("writhe polynomial of the {r}-covering"), poly(&cg), poly(&ch))
            })
        })
}

struct Node {
    diagram: GaussDiagram,
    parent: Option<(usize, Move)>,
}

struct Side {
    nodes: Vec<Node>,
    seen: HashMap<CanonicalKey, usize>,
    frontier: Vec<usize>,
    prefix: Vec<Move>,
}

impl Side {
    fn new(root: GaussDiagram, prefix: Vec<Move>) -> Side {
        let mut seen = HashMap::new();
        seen.insert(root.canonical_key(), 0);
        Side {
            nodes: vec![Node {
                diagram: root,
                parent: None,
            }],
            seen,
            frontier: vec![0],
            prefix,
        }
    }

    fn path_to(&self, mut idx: usize) -> Vec<Move> {
        let mut rev = Vec::new();
        while let Some((parent, mv)) = self.nodes[idx].parent {
            rev.push(mv);
            idx = parent;
        }
        let mut path = self.prefix.clone();
        path.extend(rev.into_iter().rev());
        path
    }

    /// Expands one layer; returns the first new node whose key `other` has
    /// already seen, as `(index here, index there)`.
    fn expand(&mut self, other: &Side, exec: Execution) -> Option<(usize, usize)> {
        let frontier = std::mem::take(&mut self.frontier);
        let nodes = &self.nodes;
        let children = exec::map(exec, &frontier, |&idx| {
            let g = &nodes[idx].diagram;
            all_moves(g)
                .into_iter()
                .map(|mv| {
                    let h = apply_move(g, &mv).expect("enumerated moves apply");
                    let key = h.canonical_key();
                    (mv, h, key)
                })
                .collect::<Vec<_>>()
        });
        for (&parent, kids) in frontier.iter().zip(children) {
            for (mv, h, key) in kids {
                if self.seen.contains_key(&key) {
                    continue;
                }
                let idx = self.nodes.len();
                if let Some(&there) = other.seen.get(&key) {
                    self.nodes.push(Node {
                        diagram: h,
                        parent: Some((parent, mv)),
                    });
                    return Some((idx, there));
                }
                self.seen.insert(key, idx);
                self.nodes.push(Node {
                    diagram: h,
                    parent: Some((parent, mv)),
                });
                self.frontier.push(idx);
            }
        }
        None
    }
}

/// Decides equivalence of `g` and `h` within `depth` search layers where
/// possible.
pub fn equivalent_bounded(g: &GaussDiagram, h: &GaussDiagram, depth: usize) -> Result<EquivalenceVerdict> {
    equivalent_bounded_with(g, h, depth, Execution::default())
}

pub fn equivalent_bounded_with(
    g: &GaussDiagram,
    h: &GaussDiagram,
    depth: usize,
    exec: Execution,
) -> Result<EquivalenceVerdict> {
    if g.kind() != h.kind() {
        return Err(Error::KindMismatch(g.kind(), h.kind()));
    }
    if g.is_isomorphic(h)? {
        return Ok(EquivalenceVerdict::Equivalent {
            left: Vec::new(),
            right: Vec::new(),
        });
    }
    if let Some(sep) = separate(g, h) {
        return Ok(EquivalenceVerdict::Distinct(sep));
    }
    let (gs, gt) = simplify_with_trace(g);
    let (hs, ht) = simplify_with_trace(h);
    let mut left = Side::new(gs, gt);
    let mut right = Side::new(hs, ht);
    if let Some(&there) = right.seen.get(&left.nodes[0].diagram.canonical_key()) {
        return Ok(EquivalenceVerdict::Equivalent {
            left: left.path_to(0),
            right: right.path_to(there),
        });
    }
    for layer in 0..depth {
        let verdict = if layer % 2 == 0 {
            left.expand(&right, exec)
        } else {
            right.expand(&left, exec).map(|(b, a)| (a, b))
        };
        if let Some((a, b)) = verdict {
            return Ok(EquivalenceVerdict::Equivalent {
                left: left.path_to(a),
                right: right.path_to(b),
            });
        }
        if left.nodes.len() > MAX_STATES || right.nodes.len() > MAX_STATES {
            break;
        }
        if left.frontier.is_empty() && right.frontier.is_empty() {
            break;
        }
    }
    Ok(EquivalenceVerdict::Unknown)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::Kind;
    use crate::moves::replay;

    fn d(text: &str) -> GaussDiagram {
        text.replace(" / ", "\n").parse().unwrap()
    }

    fn check_paths(g: &GaussDiagram, h: &GaussDiagram, v: &EquivalenceVerdict) {
        let EquivalenceVerdict::Equivalent { left, right } = v else {
            panic!("expected Equivalent, got {v:?}");
        };
        let a = replay(g, left).unwrap();
        let b = replay(h, right).unwrap();
        assert!(a.is_isomorphic(&b).unwrap());
    }

    #[test]
    fn self_is_equivalent_with_empty_paths() {
        let g = d("kind linear / seq T1 T2 H1 H2 / sign 1 + / sign 2 +");
        assert_eq!(
            equivalent_bounded(&g, &g, 0).unwrap(),
            EquivalenceVerdict::Equivalent {
                left: vec![],
                right: vec![]
            }
        );
    }

    #[test]
    fn separated_by_writhe() {
        let e = GaussDiagram::empty(Kind::Linear);
        let g = d("kind linear / seq T1 T2 H1 H2 / sign 1 + / sign 2 +");
        let EquivalenceVerdict::Distinct(sep) = equivalent_bounded(&e, &g, 3).unwrap() else {
            panic!()
        };
        assert_eq!(sep.invariant, "writhe polynomial");
        assert_eq!(sep.left, "0");
        assert_eq!(sep.right, "t - 2 + t^-1");
    }

    #[test]
    fn kink_is_trivial() {
        let e = GaussDiagram::empty(Kind::Linear);
        let g = d("kind linear / seq T1 H1 / sign 1 +");
        let v = equivalent_bounded(&g, &e, 1).unwrap();
        check_paths(&g, &e, &v);
        let v = equivalent_bounded(&e, &g, 1).unwrap();
        check_paths(&e, &g, &v);
    }

    #[test]
    fn r3_related_diagrams_are_found() {
        let g = d("kind linear / seq T1 T2 H1 T3 H2 H3 / sign 1 + / sign 2 + / sign 3 +");
        let h = apply_move(&g, &Move::R3 { blocks: [0, 2, 4] }).unwrap();
        assert!(!g.is_isomorphic(&h).unwrap());
        for exec in [Execution::Sequential, Execution::Parallel] {
            let v = equivalent_bounded_with(&g, &h, 1, exec).unwrap();
            check_paths(&g, &h, &v);
        }
    }

    #[test]
    fn depth_zero_is_unknown_when_not_simplifiable() {
        let g = d("kind linear / seq T1 T2 H1 T3 H2 H3 / sign 1 + / sign 2 + / sign 3 +");
        let h = apply_move(&g, &Move::R3 { blocks: [0, 2, 4] }).unwrap();
        assert_eq!(equivalent_bounded(&g, &h, 0).unwrap(), EquivalenceVerdict::Unknown);
    }

    #[test]
    fn kind_mismatch() {
        let a = GaussDiagram::empty(Kind::Linear);
        let b = GaussDiagram::empty(Kind::Circular);
        assert!(equivalent_bounded(&a, &b, 1).is_err());
    }
}
