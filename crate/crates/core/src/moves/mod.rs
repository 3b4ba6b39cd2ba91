//! Reidemeister moves on Gauss diagrams.
//!
//! * **R1**: a chord whose two endpoints are adjacent (cyclically, for
//!   circular diagrams), any sign and orientation.
//! * **R2**: two chords of opposite sign whose tails are adjacent and whose
//!   heads are adjacent, in either relative order.
//! * **R3**: three chords of equal sign `x, y, z` occupying three adjacent
//!   endpoint pairs `(Tx Ty) (Hx Tz) (Hy Hz)`; the move reverses each pair,
//!   giving `(Ty Tx) (Tz Hx) (Hz Hy)`, and the same move undoes it. This is the
//!   braid-like variant with all three strands running the same way.
//!
//! Every move keeps each surviving chord's index, so the writhe vector is
//! unchanged.
//!
//! Insertion positions are *gaps*: gap `g` of a diagram with `L` endpoints is
//! the slot before position `g`, for `0 ≤ g ≤ L`. On a circular diagram gaps
//! `0` and `L` give rotations of the same result.

mod search;

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::diagram::{ChordId, Endpoint, GaussDiagram, Role, Sign};
use crate::error::{Error, ParseError, Result};

pub use search::{equivalent_bounded, equivalent_bounded_with, EquivalenceVerdict, Separation};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum MoveKind {
    R1,
    R2,
    R3,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Direction {
    Remove,
    Insert,
}

/// A located Reidemeister move.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Move {
    R1Remove {
        chord: ChordId,
    },
    /// New chord at `gap`; its endpoint with role `first` comes first.
    R1Insert {
        gap: usize,
        first: Role,
        sign: Sign,
    },
    R2Remove {
        first: ChordId,
        second: ChordId,
    },
    /// New chords `a` (sign `sign`) and `b` (sign `-sign`). The block at
    /// `gaps.0` reads `a b` with role `role`; the block at `gaps.1` carries the
    /// other role and reads `a b`, or `b a` when `reversed`. `gaps.0 ≤ gaps.1`,
    /// and with equal gaps the first block comes first.
    R2Insert {
        gaps: (usize, usize),
        role: Role,
        reversed: bool,
        sign: Sign,
    },
    /// First positions of the three endpoint pairs (top, middle, bottom).
    R3 {
        blocks: [usize; 3],
    },
}

impl Move {
    pub fn kind(&self) -> MoveKind {
        match self {
            Move::R1Remove { .. } | Move::R1Insert { .. } => MoveKind::R1,
            Move::R2Remove { .. } | Move::R2Insert { .. } => MoveKind::R2,
            Move::R3 { .. } => MoveKind::R3,
        }
    }

    /// `None` for R3, which neither adds nor removes chords.
    pub fn direction(&self) -> Option<Direction> {
        match self {
            Move::R1Remove { .. } | Move::R2Remove { .. } => Some(Direction::Remove),
            Move::R1Insert { .. } | Move::R2Insert { .. } => Some(Direction::Insert),
            Move::R3 { .. } => None,
        }
    }

    /// The move that undoes `self`, given the diagram `before` it applies to.
    /// For circular diagrams the round trip may end at a rotation of `before`.
    pub fn inverse(&self, before: &GaussDiagram) -> Result<Move> {
        match *self {
            Move::R1Insert { .. } => Ok(Move::R1Remove {
                chord: ChordId(before.fresh_id()),
            }),
            Move::R2Insert { .. } => {
                let a = before.fresh_id();
                Ok(Move::R2Remove {
                    first: ChordId(a),
                    second: ChordId(a + 1),
                })
            }
            Move::R3 { blocks } => Ok(Move::R3 { blocks }),
            Move::R1Remove { chord } => {
                let c = *before.chord(chord)?;
                let first = if before.adjacent(c.tail, c.head) {
                    c.tail
                } else if before.adjacent(c.head, c.tail) {
                    c.head
                } else {
                    return Err(Error::InvalidMove(format!("chord {chord} is not R1-removable")));
                };
                let removed = BTreeSet::from([c.tail, c.head]);
                let (gap, _) = block_gap(before, first, &removed);
                Ok(Move::R1Insert {
                    gap,
                    first: before.endpoints()[first].role,
                    sign: c.sign,
                })
            }
            Move::R2Remove { first, second } => {
                let (tails, heads) = r2_blocks(before, first, second)
                    .ok_or_else(|| Error::InvalidMove(format!("{self} is not an R2 site")))?;
                let removed: BTreeSet<usize> = [tails.0, tails.1, heads.0, heads.1].into();
                let mut blocks = [tails, heads].map(|b| {
                    let (gap, wraps) = block_gap(before, b.0, &removed);
                    (gap, !wraps, b.0, b.1)
                });
                blocks.sort();
                let [(g1, _, p1, _), (g2, _, p2, _)] = blocks;
                let eps = before.endpoints();
                let a = eps[p1].chord;
                Ok(Move::R2Insert {
                    gaps: (g1, g2),
                    role: eps[p1].role,
                    reversed: eps[p2].chord != a,
                    sign: before.sign(a)?,
                })
            }
        }
    }

    /// Smallest endpoint position the move touches, used to order sites.
    fn anchor(&self, g: &GaussDiagram) -> usize {
        match *self {
            Move::R1Remove { chord } => {
                let c = g.chord(chord).expect("site chord");
                c.tail.min(c.head)
            }
            Move::R2Remove { first, second } => {
                let (a, b) = (g.chord(first).expect("site"), g.chord(second).expect("site"));
                a.tail.min(a.head).min(b.tail).min(b.head)
            }
            Move::R1Insert { gap, .. } => gap,
            Move::R2Insert { gaps, .. } => gaps.0,
            Move::R3 { blocks } => *blocks.iter().min().expect("three blocks"),
        }
    }
}

/// Gap a removed adjacent pair starting at `first` leaves behind, and whether
/// the pair wrapped around the end of a circular sequence.
fn block_gap(g: &GaussDiagram, first: usize, removed: &BTreeSet<usize>) -> (usize, bool) {
    if first + 1 == g.len() && g.next_pos(first) == Some(0) {
        (0, true)
    } else {
        ((0..first).filter(|p| !removed.contains(p)).count(), false)
    }
}

/// Replay format: `R1- <chord>`, `R1+ <gap> <T|H> <+|->`, `R2- <c1> <c2>`,
/// `R2+ <gap1> <gap2> <T|H> <aligned|reversed> <+|->`, `R3 <p1> <p2> <p3>`.
impl fmt::Display for Move {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Move::R1Remove { chord } => write!(f, "R1- {chord}"),
            Move::R1Insert { gap, first, sign } => {
                write!(f, "R1+ {gap} {} {sign}", first.letter())
            }
            Move::R2Remove { first, second } => write!(f, "R2- {first} {second}"),
            Move::R2Insert {
                gaps,
                role,
                reversed,
                sign,
            } => write!(
                f,
                "R2+ {} {} {} {} {sign}",
                gaps.0,
                gaps.1,
                role.letter(),
                if reversed { "reversed" } else { "aligned" }
            ),
            Move::R3 { blocks: [a, b, c] } => write!(f, "R3 {a} {b} {c}"),
        }
    }
}

impl FromStr for Move {
    type Err = ParseError;

    fn from_str(s: &str) -> std::result::Result<Move, ParseError> {
        let bad = || ParseError::Move(format!("cannot parse `{s}`"));
        let words: Vec<&str> = s.split_whitespace().collect();
        let num = |w: &str| w.parse::<usize>().map_err(|_| bad());
        let id = |w: &str| match w.parse::<u32>() {
            Ok(k) if k > 0 => Ok(ChordId(k)),
            _ => Err(bad()),
        };
        let role = |w: &str| match w {
            "T" => Ok(Role::Tail),
            "H" => Ok(Role::Head),
            _ => Err(bad()),
        };
        let sign = |w: &str| match w {
            "+" => Ok(Sign::Pos),
            "-" => Ok(Sign::Neg),
            _ => Err(bad()),
        };
        match words[..] {
            ["R1-", c] => Ok(Move::R1Remove { chord: id(c)? }),
            ["R1+", g, r, e] => Ok(Move::R1Insert {
                gap: num(g)?,
                first: role(r)?,
                sign: sign(e)?,
            }),
            ["R2-", a, b] => Ok(Move::R2Remove {
                first: id(a)?,
                second: id(b)?,
            }),
            ["R2+", g1, g2, r, o, e] => Ok(Move::R2Insert {
                gaps: (num(g1)?, num(g2)?),
                role: role(r)?,
                reversed: match o {
                    "aligned" => false,
                    "reversed" => true,
                    _ => return Err(bad()),
                },
                sign: sign(e)?,
            }),
            ["R3", a, b, c] => Ok(Move::R3 {
                blocks: [num(a)?, num(b)?, num(c)?],
            }),
            _ => Err(bad()),
        }
    }
}

/// Parses one move per line; blank lines and `#` comments are skipped.
pub fn parse_moves(text: &str) -> std::result::Result<Vec<Move>, ParseError> {
    text.lines()
        .map(str::trim)
        .filter(|l| !l.is_empty() && !l.starts_with('#'))
        .map(str::parse)
        .collect()
}

pub fn format_moves(moves: &[Move]) -> String {
    moves.iter().map(|m| format!("{m}\n")).collect()
}

/// Tail block and head block of an R2 pair, each as `(first, second)`
/// positions in sequence order.
fn r2_blocks(g: &GaussDiagram, a: ChordId, b: ChordId) -> Option<((usize, usize), (usize, usize))> {
    let (ca, cb) = (g.chord(a).ok()?, g.chord(b).ok()?);
    if a == b || ca.sign == cb.sign {
        return None;
    }
    let pair = |x: usize, y: usize| {
        if g.adjacent(x, y) {
            Some((x, y))
        } else if g.adjacent(y, x) {
            Some((y, x))
        } else {
            None
        }
    };
    Some((pair(ca.tail, cb.tail)?, pair(ca.head, cb.head)?))
}

fn is_r1(g: &GaussDiagram, id: ChordId) -> bool {
    g.chord(id)
        .is_ok_and(|c| g.adjacent(c.tail, c.head) || g.adjacent(c.head, c.tail))
}

/// Checks the R3 pattern (either side) at the given pair starts.
fn is_r3(g: &GaussDiagram, [top, mid, bot]: [usize; 3]) -> bool {
    let len = g.len();
    if top >= len || mid >= len || bot >= len {
        return false;
    }
    let pair = |p: usize| g.next_pos(p).map(|q| (g.endpoints()[p], g.endpoints()[q]));
    let (Some(t), Some(m), Some(b)) = (pair(top), pair(mid), pair(bot)) else {
        return false;
    };
    let is = |e: Endpoint, role: Role, id: ChordId| e.role == role && e.chord == id;
    let (x, y, z);
    if t.0.role == Role::Tail && t.1.role == Role::Tail && m.0.role == Role::Head {
        // (Tx Ty) (Hx Tz) (Hy Hz)
        (x, y, z) = (t.0.chord, t.1.chord, m.1.chord);
        if !(is(m.0, Role::Head, x) && is(m.1, Role::Tail, z) && is(b.0, Role::Head, y) && is(b.1, Role::Head, z)) {
            return false;
        }
    } else if t.0.role == Role::Tail && t.1.role == Role::Tail && m.0.role == Role::Tail {
        // (Ty Tx) (Tz Hx) (Hz Hy)
        (y, x, z) = (t.0.chord, t.1.chord, m.0.chord);
        if !(is(m.1, Role::Head, x) && is(b.0, Role::Head, z) && is(b.1, Role::Head, y)) {
            return false;
        }
    } else {
        return false;
    }
    if x == y || y == z || x == z {
        return false;
    }
    let sign = |c| g.sign(c).expect("chord on the diagram");
    sign(x) == sign(y) && sign(y) == sign(z)
}

/// All removal sites (R1, R2) and R3 sites of the requested kinds, ordered by
/// lowest touched position, then kind.
pub fn find_moves(g: &GaussDiagram, kinds: &[MoveKind]) -> Vec<Move> {
    let mut sites = Vec::new();
    if kinds.contains(&MoveKind::R1) {
        sites.extend(r1_sites(g));
    }
    if kinds.contains(&MoveKind::R2) {
        sites.extend(r2_sites(g));
    }
    if kinds.contains(&MoveKind::R3) {
        sites.extend(r3_sites(g));
    }
    sites.sort_by_key(|m| (m.anchor(g), m.kind()));
    sites
}

fn sorted_sites(g: &GaussDiagram, mut sites: Vec<Move>) -> Vec<Move> {
    sites.sort_by_key(|m| m.anchor(g));
    sites
}

pub fn r1_sites(g: &GaussDiagram) -> Vec<Move> {
    let sites = g
        .chords()
        .filter(|c| is_r1(g, c.id))
        .map(|c| Move::R1Remove { chord: c.id })
        .collect();
    sorted_sites(g, sites)
}

pub fn r2_sites(g: &GaussDiagram) -> Vec<Move> {
    let eps = g.endpoints();
    let mut sites = Vec::new();
    for p in 0..g.len() {
        let Some(q) = g.next_pos(p) else { continue };
        let (a, b) = (eps[p], eps[q]);
        if a.role == Role::Tail && b.role == Role::Tail && r2_blocks(g, a.chord, b.chord).is_some() {
            sites.push(Move::R2Remove {
                first: a.chord,
                second: b.chord,
            });
        }
    }
    sorted_sites(g, sites)
}

pub fn r3_sites(g: &GaussDiagram) -> Vec<Move> {
    let eps = g.endpoints();
    let mut sites = BTreeSet::new();
    for p in 0..g.len() {
        let Some(q) = g.next_pos(p) else { continue };
        if eps[p].role != Role::Tail || eps[q].role != Role::Tail {
            continue;
        }
        let (first, second) = (g.chord(eps[p].chord).unwrap(), g.chord(eps[q].chord).unwrap());
        // Left-hand side: x = first, y = second.
        let lhs = [p, first.head, second.head];
        if is_r3(g, lhs) {
            sites.insert(lhs);
        }
        // Right-hand side: y = first, x = second.
        if let (Some(mid), Some(bot)) = (g.prev_pos(second.head), g.prev_pos(first.head)) {
            let rhs = [p, mid, bot];
            if is_r3(g, rhs) {
                sites.insert(rhs);
            }
        }
    }
    let sites = sites.into_iter().map(|blocks| Move::R3 { blocks }).collect();
    sorted_sites(g, sites)
}

/// Applies `mv` to `g`, validating the site first.
pub fn apply_move(g: &GaussDiagram, mv: &Move) -> Result<GaussDiagram> {
    let invalid = || Error::InvalidMove(format!("`{mv}` does not apply"));
    let gap_ok = |gap: usize| gap <= g.len();
    match *mv {
        Move::R1Remove { chord } => {
            if !is_r1(g, chord) {
                return Err(invalid());
            }
            Ok(g.without_chords(&BTreeSet::from([chord])))
        }
        Move::R2Remove { first, second } => {
            r2_blocks(g, first, second).ok_or_else(invalid)?;
            Ok(g.without_chords(&BTreeSet::from([first, second])))
        }
        Move::R1Insert { gap, first, sign } => {
            if !gap_ok(gap) {
                return Err(invalid());
            }
            let id = g.fresh_id();
            let mut endpoints = g.endpoints().to_vec();
            let pair = [first, first.other()].map(|role| Endpoint {
                chord: ChordId(id),
                role,
            });
            endpoints.splice(gap..gap, pair);
            let mut signs = g.signs();
            signs.insert(ChordId(id), sign);
            Ok(GaussDiagram::from_parts(g.kind(), endpoints, &signs))
        }
        Move::R2Insert {
            gaps: (g1, g2),
            role,
            reversed,
            sign,
        } => {
            if g1 > g2 || !gap_ok(g2) {
                return Err(invalid());
            }
            let (a, b) = (ChordId(g.fresh_id()), ChordId(g.fresh_id() + 1));
            let ep = |chord, role| Endpoint { chord, role };
            let first_block = [ep(a, role), ep(b, role)];
            let other = role.other();
            let second_block = if reversed {
                [ep(b, other), ep(a, other)]
            } else {
                [ep(a, other), ep(b, other)]
            };
            let old = g.endpoints();
            let mut endpoints = Vec::with_capacity(old.len() + 4);
            endpoints.extend_from_slice(&old[..g1]);
            endpoints.extend(first_block);
            endpoints.extend_from_slice(&old[g1..g2]);
            endpoints.extend(second_block);
            endpoints.extend_from_slice(&old[g2..]);
            let mut signs = g.signs();
            signs.insert(a, sign);
            signs.insert(b, -sign);
            Ok(GaussDiagram::from_parts(g.kind(), endpoints, &signs))
        }
        Move::R3 { blocks } => {
            if !is_r3(g, blocks) {
                return Err(invalid());
            }
            let mut endpoints = g.endpoints().to_vec();
            for p in blocks {
                let q = g.next_pos(p).expect("checked by is_r3");
                endpoints.swap(p, q);
            }
            Ok(GaussDiagram::from_parts(g.kind(), endpoints, &g.signs()))
        }
    }
}

/// Applies a sequence of moves in order.
pub fn replay(g: &GaussDiagram, moves: &[Move]) -> Result<GaussDiagram> {
    moves.iter().try_fold(g.clone(), |acc, m| apply_move(&acc, m))
}

/// Greedy R1/R2 removal until no removal site remains.
pub fn simplify(g: &GaussDiagram) -> GaussDiagram {
    simplify_with_trace(g).0
}

/// [`simplify`] together with the moves it applied. At each step the R1 site
/// with the lowest position is taken; R2 sites are used only when no R1 site
/// is left.
pub fn simplify_with_trace(g: &GaussDiagram) -> (GaussDiagram, Vec<Move>) {
    let mut cur = g.clone();
    let mut trace = Vec::new();
    loop {
        let next = r1_sites(&cur)
            .into_iter()
            .next()
            .or_else(|| r2_sites(&cur).into_iter().next());
        let Some(mv) = next else { break };
        cur = apply_move(&cur, &mv).expect("site was just found");
        trace.push(mv);
    }
    (cur, trace)
}

/// Every move applicable to `g`: all removal and R3 sites plus every
/// insertion over all gaps, orientations and signs.
pub fn all_moves(g: &GaussDiagram) -> Vec<Move> {
    let mut out = find_moves(g, &[MoveKind::R1, MoveKind::R2, MoveKind::R3]);
    let gaps = g.len() + 1;
    let roles = [Role::Tail, Role::Head];
    let signs = [Sign::Pos, Sign::Neg];
    for gap in 0..gaps {
        for first in roles {
            for sign in signs {
                out.push(Move::R1Insert { gap, first, sign });
            }
        }
    }
    for g1 in 0..gaps {
        for g2 in g1..gaps {
            for role in roles {
                for reversed in [false, true] {
                    for sign in signs {
                        out.push(Move::R2Insert {
                            gaps: (g1, g2),
                            role,
                            reversed,
                            sign,
                        });
                    }
                }
            }
        }
    }
    out
}

/// Draws one legal move: first a category among those available (R1+, R2+
/// always; R1-, R2-, R3 when a site exists), then a site or insertion
/// uniformly within it.
pub fn random_move<R: Rng + ?Sized>(g: &GaussDiagram, rng: &mut R) -> Move {
    let removals = [r1_sites(g), r2_sites(g), r3_sites(g)];
    let mut categories: Vec<usize> = vec![0, 1];
    categories.extend((0..3).filter(|&k| !removals[k].is_empty()).map(|k| k + 2));
    let gaps = g.len() + 1;
    let sign = |rng: &mut R| if rng.random_bool(0.5) { Sign::Pos } else { Sign::Neg };
    let role = |rng: &mut R| if rng.random_bool(0.5) { Role::Tail } else { Role::Head };
    match categories[rng.random_range(0..categories.len())] {
        0 => Move::R1Insert {
            gap: rng.random_range(0..gaps),
            first: role(rng),
            sign: sign(rng),
        },
        1 => {
            let (a, b) = (rng.random_range(0..gaps), rng.random_range(0..gaps));
            Move::R2Insert {
                gaps: (a.min(b), a.max(b)),
                role: role(rng),
                reversed: rng.random_bool(0.5),
                sign: sign(rng),
            }
        }
        k => {
            let sites = &removals[k - 2];
            sites[rng.random_range(0..sites.len())]
        }
    }
}

/// `steps` random moves from `g`, reproducible from `seed`.
pub fn random_move_walk(g: &GaussDiagram, steps: usize, seed: u64) -> GaussDiagram {
    random_walk_with_trace(g, steps, seed).0
}

pub fn random_walk_with_trace(g: &GaussDiagram, steps: usize, seed: u64) -> (GaussDiagram, Vec<Move>) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut cur = g.clone();
    let mut trace = Vec::with_capacity(steps);
    for _ in 0..steps {
        let mv = random_move(&cur, &mut rng);
        cur = apply_move(&cur, &mv).expect("random_move yields legal moves");
        trace.push(mv);
    }
    (cur, trace)
}
