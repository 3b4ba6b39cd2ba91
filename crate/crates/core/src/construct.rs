//! Anklets, parallel bands, snails and the covering-spectrum constructions.
//!
//! An *anklet* of a chord `c` is a small chord nested around one endpoint of
//! `c`, with one endpoint on each side of it. It shifts the index of `c` by
//! the sign of its endpoint lying on `c`'s tail-to-head arc, has index `±1`
//! itself, and leaves every other index alone: any other chord's arc contains
//! both of its endpoints or neither.
//!
//! The realization functions work on linear diagrams. Their guarantees are
//! exercised in the crate's `acceptance` test target.

use std::collections::BTreeMap;

use crate::arithmetic::{f_table, g_table, CoefficientTable};
use crate::diagram::{ChordId, Endpoint, GaussDiagram, Kind, Role, Sign};
use crate::error::{Error, Result};
use crate::invariants::{
    indices, require_realizable, writhe_polynomial, writhe_vector, LaurentPolynomial, WritheVector,
};

/// Side of the straddled endpoint, in sequence order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Side {
    Left,
    Right,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Anklet {
    pub sign: Sign,
    /// Which side of the straddled endpoint carries the anklet's tail.
    pub tail_side: Side,
}

/// Anklets around one endpoint of `target`, innermost first.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AnkletSpec {
    pub target: ChordId,
    pub straddle: Role,
    pub anklets: Vec<Anklet>,
}

/// Replacement of `target` by parallel chords with the given signs, all with
/// the target's orientation. Both endpoint blocks list the chords in order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParallelSpec {
    pub target: ChordId,
    pub signs: Vec<Sign>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BandMember {
    pub chord: ChordId,
    pub sign: Sign,
    /// Index the construction forces on this chord.
    pub index: i64,
}

/// The chords that replaced one original chord.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Band {
    pub original: ChordId,
    pub original_sign: Sign,
    pub members: Vec<BandMember>,
}

/// A constructed diagram with the bookkeeping needed to audit it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Construction {
    pub diagram: GaussDiagram,
    pub bands: Vec<Band>,
    pub anklets: Vec<ChordId>,
}

/// Inserts anklets; returns the new diagram and the anklet ids in spec order.
pub fn add_anklets(g: &GaussDiagram, specs: &[AnkletSpec]) -> Result<(GaussDiagram, Vec<ChordId>)> {
    let mut next = g.fresh_id();
    let mut signs = g.signs();
    let mut ids = Vec::new();
    // position -> (left endpoints outermost-first, right endpoints innermost-first)
    let mut around: BTreeMap<usize, (Vec<Endpoint>, Vec<Endpoint>)> = BTreeMap::new();
    for spec in specs {
        let pos = g.chord(spec.target)?.position(spec.straddle);
        let (left, right) = around.entry(pos).or_default();
        for a in &spec.anklets {
            let id = ChordId(next);
            next += 1;
            signs.insert(id, a.sign);
            ids.push(id);
            let (l, r) = match a.tail_side {
                Side::Left => (Role::Tail, Role::Head),
                Side::Right => (Role::Head, Role::Tail),
            };
            left.insert(0, Endpoint { chord: id, role: l });
            right.push(Endpoint { chord: id, role: r });
        }
    }
    let mut endpoints = Vec::with_capacity(g.len() + 2 * ids.len());
    for (pos, &e) in g.endpoints().iter().enumerate() {
        match around.get(&pos) {
            Some((left, right)) => {
                endpoints.extend_from_slice(left);
                endpoints.push(e);
                endpoints.extend_from_slice(right);
            }
            None => endpoints.push(e),
        }
    }
    Ok((GaussDiagram::from_parts(g.kind(), endpoints, &signs), ids))
}

/// Adds `|d|` anklets around the tail of each target, `d` being the desired
/// minus the current index, so that every target reaches its desired index.
/// Anklets carry their tail on the left and sign `sign(d)`, so the endpoint
/// on the target's arc (the right one) has sign `sign(d)`. Targets are
/// processed in order of their tail position.
pub fn add_anklets_to_index(g: &GaussDiagram, targets: &BTreeMap<ChordId, i64>) -> Result<GaussDiagram> {
    Ok(add_anklets_to_index_detailed(g, targets)?.0)
}

pub fn add_anklets_to_index_detailed(
    g: &GaussDiagram,
    targets: &BTreeMap<ChordId, i64>,
) -> Result<(GaussDiagram, Vec<ChordId>)> {
    let current = indices(g);
    let mut order: Vec<(usize, ChordId, i64)> = Vec::with_capacity(targets.len());
    for (&id, &want) in targets {
        let c = g.chord(id)?;
        order.push((c.tail, id, want - current[&id]));
    }
    order.sort();
    let specs: Vec<AnkletSpec> = order
        .into_iter()
        .filter(|&(_, _, d)| d != 0)
        .map(|(_, id, d)| AnkletSpec {
            target: id,
            straddle: Role::Tail,
            anklets: vec![
                Anklet {
                    sign: Sign::of(d).expect("nonzero"),
                    tail_side: Side::Left,
                };
                d.unsigned_abs() as usize
            ],
        })
        .collect();
    add_anklets(g, &specs)
}

/// Replaces each target by its band; returns the diagram and the new ids per
/// spec, in band order.
pub fn replace_parallel(g: &GaussDiagram, specs: &[ParallelSpec]) -> Result<(GaussDiagram, Vec<Vec<ChordId>>)> {
    let mut next = g.fresh_id();
    let mut signs = g.signs();
    let mut bands: BTreeMap<ChordId, Vec<ChordId>> = BTreeMap::new();
    let mut out_ids = Vec::with_capacity(specs.len());
    for spec in specs {
        g.chord(spec.target)?;
        if bands.contains_key(&spec.target) {
            return Err(Error::InvalidDiagram(format!("chord {} replaced twice", spec.target)));
        }
        signs.remove(&spec.target);
        let ids: Vec<ChordId> = spec
            .signs
            .iter()
            .map(|&s| {
                let id = ChordId(next);
                next += 1;
                signs.insert(id, s);
                id
            })
            .collect();
        bands.insert(spec.target, ids.clone());
        out_ids.push(ids);
    }
    let mut endpoints = Vec::with_capacity(g.len());
    for &e in g.endpoints() {
        match bands.get(&e.chord) {
            Some(ids) => endpoints.extend(ids.iter().map(|&chord| Endpoint { chord, role: e.role })),
            None => endpoints.push(e),
        }
    }
    Ok((GaussDiagram::from_parts(g.kind(), endpoints, &signs), out_ids))
}

/// Band layout shared by both covering constructions: `(sign factor, index)`
/// per member, replacing a chord of sign `ε` by chords of sign `ε·factor`.
fn build_bands(h: &GaussDiagram, layout: &[(Sign, i64)]) -> Result<Construction> {
    h.expect_kind(Kind::Linear)?;
    let mut originals: Vec<_> = h.chords().map(|c| (c.tail, c.id, c.sign)).collect();
    originals.sort();
    let specs: Vec<ParallelSpec> = originals
        .iter()
        .map(|&(_, id, eps)| ParallelSpec {
            target: id,
            signs: layout.iter().map(|&(factor, _)| eps * factor).collect(),
        })
        .collect();
    let (replaced, ids) = replace_parallel(h, &specs)?;
    let mut targets = BTreeMap::new();
    let mut bands = Vec::with_capacity(originals.len());
    for (&(_, original, eps), members) in originals.iter().zip(ids) {
        let members: Vec<BandMember> = members
            .into_iter()
            .zip(layout)
            .map(|(chord, &(factor, index))| {
                targets.insert(chord, index);
                BandMember {
                    chord,
                    sign: eps * factor,
                    index,
                }
            })
            .collect();
        bands.push(Band {
            original,
            original_sign: eps,
            members,
        });
    }
    let (diagram, anklets) = add_anklets_to_index_detailed(&replaced, &targets)?;
    Ok(Construction {
        diagram,
        bands,
        anklets,
    })
}

/// Members `(sign factor, index)` drawn from a table: `|t(i)|` chords of
/// sign `sign(t(i))` and index `i` for each `i` in the support, increasing.
fn table_layout(t: &CoefficientTable) -> Vec<(Sign, i64)> {
    t.iter()
        .filter(|&(_, v)| v != 0)
        .flat_map(|(i, v)| {
            let s = Sign::of(v).expect("nonzero");
            std::iter::repeat_n((s, i as i64), v.unsigned_abs() as usize)
        })
        .collect()
}

/// Long diagram whose 0-covering and r-coverings for `r ≥ n+1` are `h`, and
/// whose r-coverings for `2 ≤ r ≤ n` cancel to nothing.
///
/// Each chord becomes the band `c_0, c_ij` (`1 + Σ|f_n(i)|` chords) with
/// forced indices `0` and `i`. For `n = 1` the band is `c_0` alone.
pub fn realize_zero_covering(h: &GaussDiagram, n: i64) -> Result<GaussDiagram> {
    Ok(realize_zero_covering_detailed(h, n)?.diagram)
}

pub fn realize_zero_covering_detailed(h: &GaussDiagram, n: i64) -> Result<Construction> {
    if n < 1 {
        return Err(Error::OutOfDomain(format!(
            "realize_zero_covering: n must be >= 1, got {n}"
        )));
    }
    let mut layout = vec![(Sign::Pos, 0)];
    if n >= 2 {
        layout.extend(table_layout(&f_table(n)?));
    }
    build_bands(h, &layout)
}

/// Long diagram whose n-covering is `h` and whose other coverings (`r ≠ 1`)
/// cancel or vanish. Each chord becomes the band `c_i`, `i ∈ Q_n`, with
/// forced index `i` and sign `ε·sign(g_n(i))`.
pub fn realize_single_covering(h: &GaussDiagram, n: i64) -> Result<GaussDiagram> {
    Ok(realize_single_covering_detailed(h, n)?.diagram)
}

pub fn realize_single_covering_detailed(h: &GaussDiagram, n: i64) -> Result<Construction> {
    if n < 2 {
        return Err(Error::OutOfDomain(format!(
            "realize_single_covering: n must be >= 2, got {n}"
        )));
    }
    build_bands(h, &table_layout(&g_table(n)?))
}

fn snail_candidate(n: i64, eps: Sign, straddle: Role, anklet: Anklet) -> GaussDiagram {
    let base = GaussDiagram::from_parts(
        Kind::Linear,
        vec![Endpoint::tail(1), Endpoint::head(1)],
        &BTreeMap::from([(ChordId(1), eps)]),
    );
    let spec = AnkletSpec {
        target: ChordId(1),
        straddle,
        anklets: vec![anklet; n.unsigned_abs() as usize],
    };
    add_anklets(&base, &[spec]).expect("chord 1 exists").0
}

fn is_snail(g: &GaussDiagram, n: i64, eps: Sign) -> bool {
    let ind = indices(g);
    let main_ok = ind[&ChordId(1)] == n;
    let anklets_ok = ind.iter().all(|(&id, &i)| id == ChordId(1) || i == 1);
    let expected = WritheVector::from_pairs([(n, eps.value()), (1, -eps.value() * n)]);
    main_ok && anklets_ok && writhe_vector(g) == expected
}

/// The `(n, ε)`-snail: a chord of sign `ε` and index `n` with `|n|` anklets of
/// index 1, so that its writhe vector is `{n ↦ ε, 1 ↦ −εn}`.
///
/// Found by search: all anklets share one placement (around the tail or the
/// head), one orientation and one sign; the first of the eight combinations
/// meeting the index and writhe conditions is used.
pub fn snail(n: i64, eps: Sign) -> Result<GaussDiagram> {
    if n == 0 {
        return Err(Error::OutOfDomain("snail: n must be nonzero".into()));
    }
    for straddle in [Role::Tail, Role::Head] {
        for tail_side in [Side::Left, Side::Right] {
            for sign in [Sign::Pos, Sign::Neg] {
                let g = snail_candidate(n, eps, straddle, Anklet { sign, tail_side });
                if is_snail(&g, n, eps) {
                    return Ok(g);
                }
            }
        }
    }
    unreachable!("a uniform anklet configuration always exists")
}

/// Juxtaposes `h` with `|a_n|` copies of `S(n, sign(a_n))` for each `n ≠ 0, 1`,
/// where `f − W_h = Σ a_n t^n`, so that the result has writhe polynomial `f`.
/// Snails have one chord of index `n` besides index-1 anklets, so r-coverings
/// for `r = 0` and `r ≥ 2` gain at most isolated chords.
pub fn adjust_writhe(h: &GaussDiagram, f: &LaurentPolynomial) -> Result<GaussDiagram> {
    h.expect_kind(Kind::Linear)?;
    require_realizable(f)?;
    let diff = f - &writhe_polynomial(h);
    let mut g = h.clone();
    for (n, a) in diff.terms().filter(|&(n, _)| n != 0 && n != 1) {
        let s = snail(n, Sign::of(a).expect("stored coefficients are nonzero"))?;
        for _ in 0..a.unsigned_abs() {
            g = g.juxtapose(&s)?;
        }
    }
    Ok(g)
}

/// Target coverings `J_0, J_2, …, J_m`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Spectrum {
    pub zero: GaussDiagram,
    /// `higher[k]` is `J_{k+2}`.
    pub higher: Vec<GaussDiagram>,
}

impl Spectrum {
    pub fn new(zero: GaussDiagram, higher: Vec<GaussDiagram>) -> Spectrum {
        Spectrum { zero, higher }
    }

    /// Trivial targets of the given kind for `m ≥ 1`.
    pub fn trivial(kind: Kind, m: usize) -> Spectrum {
        Spectrum {
            zero: GaussDiagram::empty(kind),
            higher: vec![GaussDiagram::empty(kind); m.saturating_sub(1)],
        }
    }

    pub fn m(&self) -> usize {
        self.higher.len() + 1
    }

    /// Prescribed r-covering: `J_r` for `2 ≤ r ≤ m`, `J_0` for `r = 0` and
    /// `r > m`; `None` for `r = 1`.
    pub fn target(&self, r: usize) -> Option<&GaussDiagram> {
        match r {
            1 => None,
            0 => Some(&self.zero),
            r if r <= self.m() => Some(&self.higher[r - 2]),
            _ => Some(&self.zero),
        }
    }

    fn all(&self) -> impl Iterator<Item = &GaussDiagram> {
        std::iter::once(&self.zero).chain(&self.higher)
    }
}

/// Long diagram with the prescribed coverings (up to cancellation of trivial
/// summands) and writhe polynomial `f`: the zero-covering construction for
/// `(m, J_0)` and the single-covering constructions for `(r, J_r)` are
/// juxtaposed, then the writhe polynomial is adjusted with snails.
pub fn realize_spectrum(spectrum: &Spectrum, f: &LaurentPolynomial) -> Result<GaussDiagram> {
    for j in spectrum.all() {
        j.expect_kind(Kind::Linear)?;
    }
    require_realizable(f)?;
    let m = spectrum.m() as i64;
    let mut g = realize_zero_covering(&spectrum.zero, m)?;
    for (k, j) in spectrum.higher.iter().enumerate() {
        g = g.juxtapose(&realize_single_covering(j, k as i64 + 2)?)?;
    }
    adjust_writhe(&g, f)
}

/// How a circular target is cut open into a long diagram.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Opening {
    /// Before the first endpoint of the canonical rotation.
    #[default]
    Canonical,
    /// Before the given position of the diagram as supplied.
    At(usize),
}

pub fn open_with(j: &GaussDiagram, opening: Opening) -> Result<GaussDiagram> {
    j.expect_kind(Kind::Circular)?;
    match opening {
        Opening::Canonical => j.canonical().open(),
        Opening::At(k) => j.rotated(k)?.open(),
    }
}

/// Circular version of [`realize_spectrum`]: every target is opened, the long
/// construction is run and its closure returned.
///
/// ```
/// use vknot::construct::{realize_spectrum_closed, Opening, Spectrum};
/// use vknot::invariants::{covering, writhe_polynomial};
/// use vknot::moves::simplify;
/// use vknot::{GaussDiagram, Kind, LaurentPolynomial};
///
/// let j2: GaussDiagram = "kind circular\nseq T1 T2 H1 H2\nsign 1 +\nsign 2 +\n".parse().unwrap();
/// let spectrum = Spectrum::new(GaussDiagram::empty(Kind::Circular), vec![j2.clone()]);
/// let f: LaurentPolynomial = "2:1 1:-2 0:1".parse().unwrap();
/// let k = realize_spectrum_closed(&spectrum, &f, Opening::Canonical).unwrap();
/// assert_eq!(writhe_polynomial(&k), f);
/// assert!(simplify(&covering(&k, 2).unwrap()).is_isomorphic(&j2).unwrap());
/// assert!(simplify(&covering(&k, 0).unwrap()).is_empty());
/// ```
pub fn realize_spectrum_closed(spectrum: &Spectrum, f: &LaurentPolynomial, opening: Opening) -> Result<GaussDiagram> {
    let open = Spectrum {
        zero: open_with(&spectrum.zero, opening)?,
        higher: spectrum
            .higher
            .iter()
            .map(|j| open_with(j, opening))
            .collect::<Result<_>>()?,
    };
    realize_spectrum(&open, f)?.closure()
}
