//! Chord index, r-coverings, n-writhes and the writhe polynomial.

mod poly;

use std::collections::{BTreeMap, BTreeSet};

pub use poly::LaurentPolynomial;

use crate::diagram::{ChordId, GaussDiagram};
use crate::error::{Error, Result};

/// `n ↦ w_n` for the nonzero `n` with nonzero `w_n`.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct WritheVector(BTreeMap<i64, i64>);

impl WritheVector {
    pub fn get(&self, n: i64) -> i64 {
        self.0.get(&n).copied().unwrap_or(0)
    }

    pub fn iter(&self) -> impl Iterator<Item = (i64, i64)> + '_ {
        self.0.iter().map(|(&n, &w)| (n, w))
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn from_pairs<I: IntoIterator<Item = (i64, i64)>>(pairs: I) -> Self {
        let mut v = WritheVector::default();
        for (n, w) in pairs {
            v.add(n, w);
        }
        v
    }

    fn add(&mut self, n: i64, w: i64) {
        if n == 0 || w == 0 {
            return;
        }
        let e = self.0.entry(n).or_insert(0);
        *e += w;
        if *e == 0 {
            self.0.remove(&n);
        }
    }
}

/// Prefix sums of endpoint signs: `prefix[p]` is the sum over positions `< p`.
fn sign_prefix(g: &GaussDiagram) -> Vec<i64> {
    let mut prefix = Vec::with_capacity(g.len() + 1);
    prefix.push(0);
    let mut acc = 0;
    for p in 0..g.len() {
        acc += g.endpoint_sign(p);
        prefix.push(acc);
    }
    prefix
}

/// Index of one chord: the endpoint-sign sum over the arc running from its
/// tail to its head. Linear diagrams are read on their closure, cut before the
/// first endpoint.
pub fn index(g: &GaussDiagram, id: ChordId) -> Result<i64> {
    let c = g.chord(id)?;
    let prefix = sign_prefix(g);
    Ok(prefix[c.head] - prefix[c.tail + 1])
}

/// Indices of all chords.
pub fn indices(g: &GaussDiagram) -> BTreeMap<ChordId, i64> {
    let prefix = sign_prefix(g);
    // The total endpoint sign is zero, so the wrapping arc (head before tail)
    // has the same closed form.
    g.chords()
        .map(|c| (c.id, prefix[c.head] - prefix[c.tail + 1]))
        .collect()
}

/// Whether a chord of index `ind` survives in the `r`-covering.
pub fn survives(ind: i64, r: u64) -> bool {
    match r {
        0 => ind == 0,
        1 => true,
        r => ind.rem_euclid(r as i64) == 0,
    }
}

/// The `r`-covering: keep exactly the chords whose index in `g` is divisible
/// by `r` (equal to 0 when `r = 0`). Indices are taken in `g` before any chord
/// is removed.
pub fn covering(g: &GaussDiagram, r: i64) -> Result<GaussDiagram> {
    if r < 0 {
        return Err(Error::NegativeCovering(r));
    }
    let remove: BTreeSet<ChordId> = indices(g)
        .into_iter()
        .filter(|&(_, ind)| !survives(ind, r as u64))
        .map(|(id, _)| id)
        .collect();
    Ok(g.without_chords(&remove))
}

pub fn writhe_vector(g: &GaussDiagram) -> WritheVector {
    let ind = indices(g);
    let mut v = WritheVector::default();
    for c in g.chords() {
        v.add(ind[&c.id], c.sign.value());
    }
    v
}

/// `W(t) = Σ_{n≠0} w_n t^n − Σ_{n≠0} w_n`.
pub fn writhe_polynomial(g: &GaussDiagram) -> LaurentPolynomial {
    writhe_polynomial_of(&writhe_vector(g))
}

pub fn writhe_polynomial_of(v: &WritheVector) -> LaurentPolynomial {
    let mut p = LaurentPolynomial::from_terms(v.iter());
    p.add_term(0, -v.iter().map(|(_, w)| w).sum::<i64>());
    p
}

/// Sum of `w_n` over odd `n`.
pub fn odd_writhe(g: &GaussDiagram) -> i64 {
    writhe_vector(g)
        .iter()
        .filter(|(n, _)| n.rem_euclid(2) == 1)
        .map(|(_, w)| w)
        .sum()
}

/// The realizability test `f(1) = f'(1) = 0`.
pub fn check_realizability(f: &LaurentPolynomial) -> bool {
    f.eval_at_one() == 0 && f.derivative_at_one() == 0
}

/// Like [`check_realizability`], reporting the offending values.
pub fn require_realizable(f: &LaurentPolynomial) -> Result<()> {
    if check_realizability(f) {
        Ok(())
    } else {
        Err(Error::Unrealizable {
            at_one: f.eval_at_one(),
            derivative_at_one: f.derivative_at_one(),
        })
    }
}

/// Writhe polynomials of the `r`-coverings for `r = 0..=r_max`.
pub fn covering_spectrum(g: &GaussDiagram, r_max: u64) -> Vec<LaurentPolynomial> {
    (0..=r_max)
        .map(|r| writhe_polynomial(&covering(g, r as i64).expect("non-negative")))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::{enumerate, Kind};

    fn d(text: &str) -> GaussDiagram {
        text.replace(" / ", "\n").parse().unwrap()
    }

    /// Walks the circle from the tail to the head, adding endpoint signs.
    fn index_by_walk(g: &GaussDiagram, id: ChordId) -> i64 {
        let c = g.chord(id).unwrap();
        let len = g.len();
        let mut pos = (c.tail + 1) % len;
        let mut sum = 0;
        while pos != c.head {
            let e = g.endpoints()[pos];
            let eps = g.sign(e.chord).unwrap().value();
            sum += if e.role == crate::Role::Tail { -eps } else { eps };
            pos = (pos + 1) % len;
        }
        sum
    }

    #[test]
    fn index_examples() {
        let one = d("kind linear / seq T1 H1 / sign 1 -");
        assert_eq!(index(&one, ChordId(1)).unwrap(), 0);
        let g = d("kind linear / seq T1 T2 H1 H2 / sign 1 + / sign 2 +");
        assert_eq!(index(&g, ChordId(1)).unwrap(), -1);
        assert_eq!(index(&g, ChordId(2)).unwrap(), 1);
        assert!(matches!(index(&g, ChordId(9)), Err(Error::UnknownChord(_))));
    }

    #[test]
    fn closed_form_matches_walk() {
        for kind in [Kind::Linear, Kind::Circular] {
            for g in enumerate(kind, 3) {
                let all = indices(&g);
                for c in g.chords() {
                    assert_eq!(all[&c.id], index_by_walk(&g, c.id), "{g}");
                }
            }
        }
    }

    #[test]
    fn closure_preserves_indices() {
        for g in enumerate(Kind::Linear, 3) {
            assert_eq!(indices(&g), indices(&g.closure().unwrap()));
        }
    }

    #[test]
    fn juxtaposition_preserves_indices() {
        let small = enumerate(Kind::Linear, 2);
        for a in &small {
            for b in &small {
                let ab = a.juxtapose(b).unwrap();
                let ind = indices(&ab);
                let offset = a.fresh_id() - 1;
                for (id, i) in indices(a) {
                    assert_eq!(ind[&id], i);
                }
                for (id, i) in indices(b) {
                    assert_eq!(ind[&ChordId(id.0 + offset)], i);
                }
            }
        }
    }

    #[test]
    fn covering_examples() {
        let g = d("kind linear / seq T1 T2 H1 H2 / sign 1 + / sign 2 +");
        assert_eq!(covering(&g, 1).unwrap(), g);
        assert!(covering(&g, 2).unwrap().is_empty());
        assert!(covering(&g, 0).unwrap().is_empty());
        assert!(matches!(covering(&g, -1), Err(Error::NegativeCovering(-1))));
        for g in enumerate(Kind::Linear, 3) {
            let max = indices(&g).values().map(|i| i.abs()).max().unwrap_or(0);
            let zero = covering(&g, 0).unwrap();
            for r in max + 1..max + 4 {
                assert_eq!(covering(&g, r).unwrap(), zero);
            }
            for r in 0..6 {
                assert!(covering(&g, r).unwrap().chord_count() <= g.chord_count());
            }
        }
    }

    #[test]
    fn writhe_examples() {
        let e = GaussDiagram::empty(Kind::Linear);
        assert!(writhe_vector(&e).is_empty());
        assert!(writhe_polynomial(&e).is_zero());
        assert_eq!(odd_writhe(&e), 0);
        let g = d("kind linear / seq T1 T2 H1 H2 / sign 1 + / sign 2 +");
        assert_eq!(writhe_vector(&g), WritheVector::from_pairs([(-1, 1), (1, 1)]));
        let w = writhe_polynomial(&g);
        assert_eq!(w, LaurentPolynomial::from_terms([(-1, 1), (1, 1), (0, -2)]));
        assert_eq!(odd_writhe(&g), 2);
    }

    #[test]
    fn realizability_examples() {
        assert!(check_realizability(&LaurentPolynomial::zero()));
        let f: LaurentPolynomial = "1:1 0:-1".parse().unwrap();
        assert!(!check_realizability(&f));
        assert_eq!(
            require_realizable(&f),
            Err(Error::Unrealizable {
                at_one: 0,
                derivative_at_one: 1
            })
        );
        assert!(check_realizability(&"2:1 1:-2 0:1".parse().unwrap()));
    }

    #[test]
    fn adjacent_chord_has_index_zero() {
        for kind in [Kind::Linear, Kind::Circular] {
            for g in enumerate(kind, 3) {
                for c in g.chords() {
                    if g.adjacent(c.tail, c.head) || g.adjacent(c.head, c.tail) {
                        assert_eq!(index(&g, c.id).unwrap(), 0);
                    }
                }
            }
        }
    }
}
