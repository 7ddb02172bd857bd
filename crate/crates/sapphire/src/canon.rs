//! Equivalence orbits of sapphire gluing matrices, canonical forms, the
//! homeomorphism test, and the closed-form first homology.
//!
//! Two gluing matrices describe the same sapphire exactly when one lies in
//! the finite orbit of the other under negation, inversion, and one-sided
//! multiplication by `diag(1, -1)` (Morimoto's classification). The orbit
//! of a valid matrix always contains members with all entries positive,
//! which is what makes a canonical representative possible:
//!
//! * the sign operations realize every even sign flip on the four entries,
//!   and
//! * a matrix with nonzero entries, determinant +1 or -1 and an odd number
//!   of negative entries would need |ru| + |st| = 1, which is impossible.
//!
//! Positivity plus `r <= u` can still leave two candidates, so the
//! canonical form is pinned down as the lexicographically smallest
//! qualifying orbit member.

use std::collections::BTreeSet;
use std::fmt;

use serde::Serialize;

use crate::error::Error;
use crate::intlinalg::{AbelianGroup, Mat2Z};
use crate::presentations::SapphireMatrix;

/// The canonical representative of a sapphire's orbit: all entries
/// positive, `r <= u`, lexicographically minimal among such members.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Serialize)]
#[serde(into = "Mat2Z")]
pub struct CanonicalSapphire(SapphireMatrix);

impl CanonicalSapphire {
    pub fn as_sapphire(&self) -> &SapphireMatrix {
        &self.0
    }

    pub fn matrix(&self) -> Mat2Z {
        self.0.matrix()
    }

    pub fn entries(&self) -> (i64, i64, i64, i64) {
        self.0.entries()
    }
}

impl fmt::Display for CanonicalSapphire {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

impl From<CanonicalSapphire> for Mat2Z {
    fn from(c: CanonicalSapphire) -> Mat2Z {
        c.matrix()
    }
}

/// All matrices describing the same sapphire as `a`: the set
/// `{±X, ±BX, ±XB, ±BXB}` for `X` ranging over `a` and its inverse, with
/// `B = diag(1, -1)`.
///
/// The set is closed under the generating operations and contains at most
/// 16 distinct matrices (well under the formal bound of 32 products).
pub fn morimoto_orbit(a: &SapphireMatrix) -> BTreeSet<Mat2Z> {
    let b = Mat2Z::new(1, 0, 0, -1);
    let inverse = a
        .matrix()
        .inv()
        .expect("sapphire matrices are unimodular by construction");
    let mut orbit = BTreeSet::new();
    for x in [a.matrix(), inverse] {
        for left in [false, true] {
            for right in [false, true] {
                let mut m = x;
                if left {
                    m = b.mul(&m);
                }
                if right {
                    m = m.mul(&b);
                }
                orbit.insert(m);
                orbit.insert(-m);
            }
        }
    }
    orbit
}

/// Orbit membership: does `b` appear in the orbit of `a`?
///
/// This is the enumerative route to the homeomorphism test; it must agree
/// with canonical-form equality and is kept public so the two can be
/// checked against each other.
pub fn orbit_equivalent(a: &SapphireMatrix, b: &SapphireMatrix) -> bool {
    morimoto_orbit(a).contains(&b.matrix())
}

/// The canonical representative of the orbit of `a`.
pub fn canonical_form(a: &SapphireMatrix) -> Result<CanonicalSapphire, Error> {
    morimoto_orbit(a)
        .into_iter()
        .find(|m| m.is_positive() && m.r <= m.u)
        .map(|m| {
            CanonicalSapphire(
                SapphireMatrix::new(m).expect("orbit members keep |det| = 1 and nonzero entries"),
            )
        })
        .ok_or(Error::NoPositiveRepresentative)
}

/// Do the two matrices describe homeomorphic sapphires?
pub fn homeomorphic(a: &SapphireMatrix, b: &SapphireMatrix) -> bool {
    let ca = canonical_form(a).expect("valid sapphire matrices have a positive representative");
    let cb = canonical_form(b).expect("valid sapphire matrices have a positive representative");
    ca == cb
}

/// First homology of the sapphire, by the closed formula: with the
/// canonical representative `[[r, s], [t, u]]`,
///
/// * `s` odd gives `Z_4t + Z_4`,
/// * `s` even gives `Z_4t + Z_2 + Z_2`,
///
/// returned in invariant-factor form.
pub fn h1_sapphire(a: &SapphireMatrix) -> AbelianGroup {
    let canon = canonical_form(a).expect("valid sapphire matrices have a positive representative");
    let (_, s, t, _) = canon.entries();
    let four_t = 4 * t as u64;
    if s % 2 != 0 {
        AbelianGroup::from_cyclic_orders(&[four_t, 4], 0)
    } else {
        AbelianGroup::from_cyclic_orders(&[four_t, 2, 2], 0)
    }
}

/// Canonical representatives of every sapphire class having a gluing
/// matrix with entries in `1..=max_entry`, in lexicographic order.
pub fn enumerate_canonical(max_entry: i64) -> Vec<CanonicalSapphire> {
    let mut seen = BTreeSet::new();
    for r in 1..=max_entry {
        for s in 1..=max_entry {
            for t in 1..=max_entry {
                for u in 1..=max_entry {
                    if (r * u - s * t).abs() != 1 {
                        continue;
                    }
                    let m = SapphireMatrix::from_entries(r, s, t, u)
                        .expect("positive entries with |det| = 1");
                    let canon =
                        canonical_form(&m).expect("positive matrices have a canonical form");
                    seen.insert(canon.matrix());
                }
            }
        }
    }
    seen.into_iter()
        .map(|m| {
            CanonicalSapphire(SapphireMatrix::new(m).expect("canonical matrices stay valid"))
        })
        .collect()
}
