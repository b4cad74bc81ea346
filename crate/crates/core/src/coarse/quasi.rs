//! Checker for `q`-quasi-isometries, in exact rational arithmetic.

use std::cmp::Ordering;

use num_rational::Rational64;
use serde::Serialize;

use crate::error::{CoarseError, Result};
use crate::graph::{Distance, Graph};
use crate::vset::VertexSet;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case", tag = "kind")]
pub enum QiViolation {
    /// `d_G(u,v)/q - q > d_H(φu, φv)`.
    LowerBound {
        u: usize,
        v: usize,
        dist_g: Distance,
        dist_h: Distance,
    },
    /// `d_H(φu, φv) > q·d_G(u,v) + q`.
    UpperBound {
        u: usize,
        v: usize,
        dist_g: Distance,
        dist_h: Distance,
    },
    /// No image point within distance `q` of `vertex`.
    NotDense { vertex: usize },
}

/// Amount by which an inequality fails; an infinite distance on the wrong
/// side fails by more than any finite amount.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
enum Excess {
    Finite(Rational64),
    Infinite,
}

/// Checks both distance inequalities over all pairs `u < v` and `q`-density
/// of the image. Distance failures are reported before density failures; the
/// worst distance failure wins, earliest pair first on ties.
pub fn verify_quasi_isometry(
    g: &Graph,
    h: &Graph,
    map: &[usize],
    q: Rational64,
) -> Result<std::result::Result<(), QiViolation>> {
    if q <= Rational64::from_integer(0) {
        return Err(CoarseError::InvalidInput(format!("q must be positive, got {q}")));
    }
    if map.len() != g.n() {
        return Err(CoarseError::InvalidInput(format!(
            "map has {} entries for {} vertices",
            map.len(),
            g.n()
        )));
    }
    for &image in map {
        h.check_vertex(image)?;
    }

    let dg = g.distance_matrix();
    let dh = h.distance_matrix();
    let mut worst: Option<(Excess, QiViolation)> = None;
    let mut consider = |excess: Option<Excess>, violation: QiViolation| {
        if let Some(e) = excess {
            if worst.as_ref().is_none_or(|(w, _)| e.cmp(w) == Ordering::Greater) {
                worst = Some((e, violation));
            }
        }
    };
    for u in 0..g.n() {
        for v in u + 1..g.n() {
            let dist_g = dg[u][v];
            let dist_h = dh[map[u]][map[v]];
            consider(
                lower_excess(dist_g, dist_h, q),
                QiViolation::LowerBound { u, v, dist_g, dist_h },
            );
            consider(
                upper_excess(dist_g, dist_h, q),
                QiViolation::UpperBound { u, v, dist_g, dist_h },
            );
        }
    }
    if let Some((_, violation)) = worst {
        return Ok(Err(violation));
    }

    let image: VertexSet = map.iter().copied().collect();
    let reach = h.bfs(&image);
    for (vertex, d) in reach.into_iter().enumerate() {
        let dense = d.is_some_and(|d| Rational64::from_integer(d as i64) <= q);
        if !dense {
            return Ok(Err(QiViolation::NotDense { vertex }));
        }
    }
    Ok(Ok(()))
}

fn rational(d: usize) -> Rational64 {
    Rational64::from_integer(d as i64)
}

fn lower_excess(dist_g: Distance, dist_h: Distance, q: Rational64) -> Option<Excess> {
    match (dist_g, dist_h) {
        (Distance::Infinite, Distance::Finite(_)) => Some(Excess::Infinite),
        (Distance::Finite(a), Distance::Finite(b)) => {
            let excess = rational(a) / q - q - rational(b);
            (excess > Rational64::from_integer(0)).then_some(Excess::Finite(excess))
        }
        (_, Distance::Infinite) => None,
    }
}

fn upper_excess(dist_g: Distance, dist_h: Distance, q: Rational64) -> Option<Excess> {
    match (dist_g, dist_h) {
        (Distance::Finite(_), Distance::Infinite) => Some(Excess::Infinite),
        (Distance::Finite(a), Distance::Finite(b)) => {
            let excess = rational(b) - q * rational(a) - q;
            (excess > Rational64::from_integer(0)).then_some(Excess::Finite(excess))
        }
        (Distance::Infinite, _) => None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::generators::*;

    fn q(n: i64, d: i64) -> Rational64 {
        Rational64::new(n, d)
    }

    #[test]
    fn identity_and_trivial() {
        let g = random(10, 0.3, 4);
        let id: Vec<usize> = (0..10).collect();
        assert_eq!(verify_quasi_isometry(&g, &g, &id, q(1, 1)).unwrap(), Ok(()));
        let k1 = Graph::empty(1);
        assert_eq!(verify_quasi_isometry(&k1, &k1, &[0], q(1, 1)).unwrap(), Ok(()));
    }

    #[test]
    fn collapsing_a_path() {
        let p = path(10);
        let out = verify_quasi_isometry(&p, &Graph::empty(1), &[0; 10], q(2, 1)).unwrap();
        assert_eq!(
            out,
            Err(QiViolation::LowerBound {
                u: 0,
                v: 9,
                dist_g: Distance::Finite(9),
                dist_h: Distance::Finite(0)
            })
        );
        // With q = 3 the path collapses within tolerance: 9/3 - 3 = 0.
        assert_eq!(
            verify_quasi_isometry(&p, &Graph::empty(1), &[0; 10], q(3, 1)).unwrap(),
            Ok(())
        );
    }

    #[test]
    fn infinite_distances() {
        let two = Graph::empty(2);
        let out = verify_quasi_isometry(&two, &path(2), &[0, 1], q(5, 1)).unwrap();
        assert!(matches!(
            out,
            Err(QiViolation::LowerBound {
                dist_g: Distance::Infinite,
                ..
            })
        ));
        let out = verify_quasi_isometry(&path(2), &two, &[0, 1], q(5, 1)).unwrap();
        assert!(matches!(
            out,
            Err(QiViolation::UpperBound {
                dist_h: Distance::Infinite,
                ..
            })
        ));
    }

    #[test]
    fn density() {
        // P_1 into P_5 at vertex 0: vertex 2 is at distance 2 > 3/2.
        let out = verify_quasi_isometry(&Graph::empty(1), &path(5), &[0], q(3, 2)).unwrap();
        assert_eq!(out, Err(QiViolation::NotDense { vertex: 2 }));
        assert_eq!(
            verify_quasi_isometry(&Graph::empty(1), &path(5), &[2], q(2, 1)).unwrap(),
            Ok(())
        );
    }

    #[test]
    fn bad_input() {
        let g = path(3);
        assert!(verify_quasi_isometry(&g, &g, &[0, 1], q(1, 1)).is_err());
        assert!(verify_quasi_isometry(&g, &g, &[0, 1, 5], q(1, 1)).is_err());
        assert!(verify_quasi_isometry(&g, &g, &[0, 1, 2], q(0, 1)).is_err());
    }
}
