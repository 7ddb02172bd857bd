//! Fundamental-group presentations of sapphires and torus bundles, and
//! first homology computed from any presentation.
//!
//! A sapphire with gluing matrix `[[r, s], [t, u]]` has fundamental group
//!
//! ```text
//! < a, b, c | a b a^-1 b,  c^2 a^-2r b^-s,  c a^2t b^u c^-1 a^2t b^u >
//! ```
//!
//! and a torus bundle with monodromy `[[m, n], [p, q]]` has
//!
//! ```text
//! < a, b, c | a b a^-1 b^-1,  c a c^-1 b^-p a^-m,  c b c^-1 b^-q a^-n >
//! ```
//!
//! First homology is the cokernel of the abelianized relation matrix, so
//! it reduces to Smith normal form over the integers.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::Error;
use crate::intlinalg::{smith_normal_form, AbelianGroup, Mat2Z};
use crate::words::{Presentation, Word};

/// The gluing matrix of a sapphire Sol manifold: an element of GL(2,Z)
/// with all four entries nonzero.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Serialize, Deserialize)]
#[serde(try_from = "Mat2Z", into = "Mat2Z")]
pub struct SapphireMatrix(Mat2Z);

impl SapphireMatrix {
    pub fn new(m: Mat2Z) -> Result<Self, Error> {
        let det = m.det();
        if det.abs() != 1 {
            return Err(Error::NotUnimodular { det });
        }
        for (value, entry) in [(m.r, 'r'), (m.s, 's'), (m.t, 't'), (m.u, 'u')] {
            if value == 0 {
                return Err(Error::ZeroEntry { entry });
            }
        }
        Ok(SapphireMatrix(m))
    }

    pub fn from_entries(r: i64, s: i64, t: i64, u: i64) -> Result<Self, Error> {
        Self::new(Mat2Z::new(r, s, t, u))
    }

    pub fn matrix(&self) -> Mat2Z {
        self.0
    }

    pub fn entries(&self) -> (i64, i64, i64, i64) {
        self.0.entries()
    }

    pub fn det(&self) -> i64 {
        self.0.det()
    }

    pub fn is_positive(&self) -> bool {
        self.0.is_positive()
    }
}

impl fmt::Display for SapphireMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

impl FromStr for SapphireMatrix {
    type Err = Error;
    fn from_str(text: &str) -> Result<Self, Error> {
        SapphireMatrix::new(text.parse()?)
    }
}

impl TryFrom<Mat2Z> for SapphireMatrix {
    type Error = Error;
    fn try_from(m: Mat2Z) -> Result<Self, Error> {
        SapphireMatrix::new(m)
    }
}

impl From<SapphireMatrix> for Mat2Z {
    fn from(m: SapphireMatrix) -> Mat2Z {
        m.0
    }
}

/// The monodromy matrix of a torus bundle over the circle: an element of
/// GL(2,Z). The Sol case is the Anosov one (|trace| > 2); that condition
/// is reported by [`TorusBundleMatrix::is_anosov`] but not enforced, since
/// cover computations only consume these matrices at the homology level.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Serialize)]
#[serde(into = "Mat2Z")]
pub struct TorusBundleMatrix(Mat2Z);

impl TorusBundleMatrix {
    pub fn new(m: Mat2Z) -> Result<Self, Error> {
        let det = m.det();
        if det.abs() != 1 {
            return Err(Error::NotUnimodular { det });
        }
        Ok(TorusBundleMatrix(m))
    }

    pub fn matrix(&self) -> Mat2Z {
        self.0
    }

    pub fn entries(&self) -> (i64, i64, i64, i64) {
        self.0.entries()
    }

    pub fn is_anosov(&self) -> bool {
        self.0.trace().abs() > 2
    }
}

impl fmt::Display for TorusBundleMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

impl From<TorusBundleMatrix> for Mat2Z {
    fn from(m: TorusBundleMatrix) -> Mat2Z {
        m.0
    }
}

/// The three-generator presentation of the fundamental group of the
/// sapphire glued along `a`.
pub fn pi1_sapphire(a: &SapphireMatrix) -> Presentation {
    let (r, s, t, u) = a.entries();
    let (ga, gb, gc) = (0, 1, 2);
    let rel1 = Word::generator(ga)
        .concat(&Word::generator(gb))
        .concat(&Word::power(ga, -1))
        .concat(&Word::generator(gb));
    let rel2 = Word::power(gc, 2)
        .concat(&Word::power(ga, -2 * r))
        .concat(&Word::power(gb, -s));
    let half = Word::power(ga, 2 * t).concat(&Word::power(gb, u));
    let rel3 = Word::generator(gc)
        .concat(&half)
        .concat(&Word::power(gc, -1))
        .concat(&half);
    Presentation::new(["a", "b", "c"], vec![rel1, rel2, rel3])
}

/// The three-generator presentation of the fundamental group of the torus
/// bundle with monodromy `a`.
pub fn pi1_torus_bundle(a: &TorusBundleMatrix) -> Presentation {
    let (m, n, p, q) = a.entries();
    let (ga, gb, gc) = (0, 1, 2);
    let rel1 = Word::generator(ga)
        .concat(&Word::generator(gb))
        .concat(&Word::power(ga, -1))
        .concat(&Word::power(gb, -1));
    let rel2 = Word::generator(gc)
        .concat(&Word::generator(ga))
        .concat(&Word::power(gc, -1))
        .concat(&Word::power(gb, -p))
        .concat(&Word::power(ga, -m));
    let rel3 = Word::generator(gc)
        .concat(&Word::generator(gb))
        .concat(&Word::power(gc, -1))
        .concat(&Word::power(gb, -q))
        .concat(&Word::power(ga, -n));
    Presentation::new(["a", "b", "c"], vec![rel1, rel2, rel3])
}

/// First homology of the presented group: Smith normal form of the
/// abelianized relation matrix.
pub fn h1_of_presentation(p: &Presentation) -> AbelianGroup {
    smith_normal_form(&p.relation_matrix())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sapphire(r: i64, s: i64, t: i64, u: i64) -> SapphireMatrix {
        SapphireMatrix::from_entries(r, s, t, u).unwrap()
    }

    #[test]
    fn sapphire_matrix_invariants() {
        assert!(SapphireMatrix::from_entries(1, 1, 1, 2).is_ok());
        assert_eq!(
            SapphireMatrix::from_entries(1, 0, 0, 1),
            Err(Error::ZeroEntry { entry: 's' })
        );
        assert_eq!(
            SapphireMatrix::from_entries(1, 2, 3, 4),
            Err(Error::NotUnimodular { det: -2 })
        );
    }

    #[test]
    fn sapphire_presentation_matches_hand_expansion() {
        let p = pi1_sapphire(&sapphire(1, 1, 1, 2));
        assert_eq!(p.generator_count(), 3);
        let texts: Vec<String> = p.relators().iter().map(|w| p.word_text(w)).collect();
        assert_eq!(texts[0], "a b a^-1 b");
        assert_eq!(texts[1], "c^2 a^-2 b^-1");
        assert_eq!(texts[2], "c a^2 b^2 c^-1 a^2 b^2");

        // r = 1, s = 2 flips the sign of the b exponent in relator 2.
        let p2 = pi1_sapphire(&sapphire(1, 2, 1, 3));
        assert_eq!(p2.word_text(&p2.relators()[1]), "c^2 a^-2 b^-2");
    }

    #[test]
    fn sapphire_relator_one_abelianizes_to_0_2_0() {
        for m in [sapphire(1, 1, 1, 2), sapphire(3, 2, 4, 3), sapphire(-1, 2, 1, -3)] {
            let p = pi1_sapphire(&m);
            assert_eq!(p.relators()[0].exponent_sums(3), vec![0, 2, 0]);
        }
    }

    #[test]
    fn torus_bundle_presentation_matches_hand_expansion() {
        let a = TorusBundleMatrix::new(Mat2Z::new(2, 1, 1, 1)).unwrap();
        let p = pi1_torus_bundle(&a);
        let texts: Vec<String> = p.relators().iter().map(|w| p.word_text(w)).collect();
        assert_eq!(texts[0], "a b a^-1 b^-1");
        assert_eq!(texts[1], "c a c^-1 b^-1 a^-2");
        assert_eq!(texts[2], "c b c^-1 b^-1 a^-1");
        // The commutator relator dies under abelianization for any matrix.
        assert_eq!(p.relators()[0].exponent_sums(3), vec![0, 0, 0]);
        assert!(a.is_anosov());
    }

    #[test]
    fn torus_bundle_allows_non_anosov_matrices() {
        let id = TorusBundleMatrix::new(Mat2Z::identity()).unwrap();
        assert!(!id.is_anosov());
        assert_eq!(pi1_torus_bundle(&id).generator_count(), 3);
    }

    #[test]
    fn h1_of_sapphire_presentations() {
        let h = h1_of_presentation(&pi1_sapphire(&sapphire(1, 1, 1, 2)));
        assert_eq!(h, AbelianGroup::from_cyclic_orders(&[4, 4], 0));

        let h2 = h1_of_presentation(&pi1_sapphire(&sapphire(1, 2, 1, 3)));
        assert_eq!(h2, AbelianGroup::from_cyclic_orders(&[4, 2, 2], 0));
    }

    #[test]
    fn h1_of_torus_bundle_has_free_rank_one() {
        let a = TorusBundleMatrix::new(Mat2Z::new(2, 1, 1, 1)).unwrap();
        let h = h1_of_presentation(&pi1_torus_bundle(&a));
        assert_eq!(h, AbelianGroup::free(1));

        let b = TorusBundleMatrix::new(Mat2Z::new(3, -2, -4, 3)).unwrap();
        let h2 = h1_of_presentation(&pi1_torus_bundle(&b));
        assert_eq!(h2, AbelianGroup::from_cyclic_orders(&[2, 2], 1));
    }
}
