//! Index-two covers of a sapphire: enumeration of the homomorphisms onto
//! Z/2, a general Reidemeister-Schreier engine for kernel presentations,
//! the closed-form cover table, and the partition of the homomorphisms
//! into equivalence classes.
//!
//! For the three-generator sapphire presentation the nontrivial
//! homomorphisms onto Z/2 are labelled by the images of `(a, b, c)`:
//!
//! | case | a | b | c | cover |
//! |------|---|---|---|-------|
//! | I    | 1 | 0 | 0 | sapphire `[[ru+st, 2rs], [2tu, ru+st]]` |
//! | II   | 0 | 1 | 0 | sapphire `[[r, s/2], [2t, u]]` |
//! | III  | 0 | 0 | 1 | sapphire `[[ru+st, 2su], [2rt, ru+st]]` |
//! | IV   | 1 | 1 | 0 | sapphire `[[r, s/2], [2t, u]]` |
//! | V    | 1 | 0 | 1 | torus bundle `e * [[ru+st, -2rt], [-2su, ru+st]]` |
//! | VI   | 0 | 1 | 1 | sapphire `[[r, s/2], [2t, u]]` |
//! | VII  | 1 | 1 | 1 | sapphire `[[r, s/2], [2t, u]]` |
//!
//! Cases sending `b` to 1 exist only when `s` is even (relator 2 must die
//! mod 2). The kernel of case V is generated by `a^2`, `b` and `a^-1 c`;
//! we record its cover at the matrix level only. Its monodromy is the
//! action of `a^-1 c` by conjugation on the fiber subgroup generated by
//! `a^2` and `b`: conjugation by `c` fixes the vector `(r, s)` and negates
//! `(t, u)`, which forces the scale factor `e = det A` above. Sapphire
//! covers need no such factor because their determinant sign variants are
//! sign flips inside one orbit, but `T_M` and `T_{-M}` are different
//! bundles.
//!
//! The engine never tries to simplify kernel presentations down to the
//! three-generator shape: presentation isomorphism is undecidable in
//! general, so all cross-checking between the engine and the table happens
//! at the level of first homology, which is a complete invariant of the
//! abelianization.

use std::fmt;

use serde::ser::{SerializeStruct, Serializer};
use serde::Serialize;

use crate::canon::{h1_sapphire, CanonicalSapphire};
use crate::error::Error;
use crate::intlinalg::{AbelianGroup, Mat2Z};
use crate::presentations::{
    h1_of_presentation, pi1_sapphire, pi1_torus_bundle, SapphireMatrix, TorusBundleMatrix,
};
use crate::words::{Presentation, Word};

/// A homomorphism onto Z/2 given by generator images in `{0, 1}`.
///
/// Valid homs are nontrivial and kill every relator mod 2.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Z2Hom {
    images: Vec<u8>,
}

impl Z2Hom {
    /// Validates the images against a presentation.
    pub fn new(images: Vec<u8>, p: &Presentation) -> Result<Self, Error> {
        let hom = Z2Hom { images };
        hom.validate_for(p)?;
        Ok(hom)
    }

    pub fn images(&self) -> &[u8] {
        &self.images
    }

    pub(crate) fn validate_for(&self, p: &Presentation) -> Result<(), Error> {
        if self.images.len() != p.generator_count() {
            return Err(Error::InvalidHom(format!(
                "{} images for {} generators",
                self.images.len(),
                p.generator_count()
            )));
        }
        if self.images.iter().any(|&i| i > 1) {
            return Err(Error::InvalidHom("images must be 0 or 1".to_string()));
        }
        if self.images.iter().all(|&i| i == 0) {
            return Err(Error::InvalidHom("the trivial map is not an epimorphism".to_string()));
        }
        for (index, rel) in p.relators().iter().enumerate() {
            if !self.kills(rel, p.generator_count()) {
                return Err(Error::InvalidHom(format!(
                    "relator {} ({}) does not map to 0",
                    index + 1,
                    p.word_text(rel)
                )));
            }
        }
        Ok(())
    }

    fn kills(&self, relator: &Word, generator_count: usize) -> bool {
        let sums = relator.exponent_sums(generator_count);
        let dot: i64 = sums
            .iter()
            .zip(&self.images)
            .map(|(&e, &i)| e * i64::from(i))
            .sum();
        dot % 2 == 0
    }

    /// The case label, defined for three-generator presentations.
    pub fn case_label(&self) -> Option<CaseLabel> {
        if self.images.len() != 3 {
            return None;
        }
        CaseLabel::from_images([self.images[0], self.images[1], self.images[2]])
    }
}

/// The seven case labels for homs out of a three-generator presentation,
/// keyed by the image triple of `(a, b, c)`.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum CaseLabel {
    I,
    II,
    III,
    IV,
    V,
    VI,
    VII,
}

impl CaseLabel {
    pub fn all() -> [CaseLabel; 7] {
        use CaseLabel::*;
        [I, II, III, IV, V, VI, VII]
    }

    pub fn images(self) -> [u8; 3] {
        match self {
            CaseLabel::I => [1, 0, 0],
            CaseLabel::II => [0, 1, 0],
            CaseLabel::III => [0, 0, 1],
            CaseLabel::IV => [1, 1, 0],
            CaseLabel::V => [1, 0, 1],
            CaseLabel::VI => [0, 1, 1],
            CaseLabel::VII => [1, 1, 1],
        }
    }

    pub fn from_images(images: [u8; 3]) -> Option<CaseLabel> {
        CaseLabel::all().into_iter().find(|c| c.images() == images)
    }

    /// Does this case send `b` to 1 (and hence require `s` even)?
    pub fn requires_even_s(self) -> bool {
        self.images()[1] == 1
    }
}

impl fmt::Display for CaseLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let text = match self {
            CaseLabel::I => "I",
            CaseLabel::II => "II",
            CaseLabel::III => "III",
            CaseLabel::IV => "IV",
            CaseLabel::V => "V",
            CaseLabel::VI => "VI",
            CaseLabel::VII => "VII",
        };
        write!(f, "{text}")
    }
}

impl Serialize for CaseLabel {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

/// All valid homs onto Z/2, ordered by weight of the image vector and then
/// reverse-lexicographically, which reproduces the case order I..VII on
/// three generators.
pub fn enumerate_z2_homs(p: &Presentation) -> Vec<Z2Hom> {
    let n = p.generator_count();
    assert!(n < 24, "too many generators to enumerate");
    let mut candidates: Vec<Vec<u8>> = (1u32..(1 << n))
        .map(|mask| (0..n).map(|g| ((mask >> g) & 1) as u8).collect())
        .collect();
    candidates.sort_by(|a, b| {
        let wa: u32 = a.iter().map(|&x| u32::from(x)).sum();
        let wb: u32 = b.iter().map(|&x| u32::from(x)).sum();
        wa.cmp(&wb).then_with(|| b.cmp(a))
    });
    candidates
        .into_iter()
        .filter_map(|images| Z2Hom::new(images, p).ok())
        .collect()
}

/// Presentation of the kernel of `h` by the Reidemeister-Schreier method.
///
/// The Schreier transversal is `{1, x}` with `x` the first generator of
/// image 1. Generators of the kernel are the nontrivial elements
/// `t g (overline{t g})^{-1}`; relators are both transversal conjugates of
/// every original relator, rewritten in the new generators and freely
/// reduced. The output has exactly `2n - 1` generators and `2k` relators
/// for an `n`-generator, `k`-relator input.
pub fn reidemeister_schreier(p: &Presentation, h: &Z2Hom) -> Result<Presentation, Error> {
    h.validate_for(p)?;
    let n = p.generator_count();
    let images = h.images();
    let x = (0..n)
        .find(|&g| images[g] == 1)
        .expect("a valid hom has a generator of image 1");

    // index[g][coset]: position of the Schreier generator for (coset, g),
    // or None for the single freely trivial one (coset 1 rep, g = x).
    let mut index: Vec<[Option<usize>; 2]> = vec![[None, None]; n];
    let mut names = Vec::new();
    for coset in 0..2usize {
        for g in 0..n {
            if coset == 0 && g == x {
                continue;
            }
            index[g][coset] = Some(names.len());
            names.push(p.word_text(&schreier_generator_word(coset, g, x, images)));
        }
    }

    let mut relators = Vec::new();
    for relator in p.relators() {
        for start in 0..2usize {
            relators.push(rewrite(relator, start, &index, images));
        }
    }
    Ok(Presentation::new(names, relators))
}

/// The element of the big group represented by the Schreier generator for
/// `(coset, g)`, used only to produce readable generator names.
fn schreier_generator_word(coset: usize, g: usize, x: usize, images: &[u8]) -> Word {
    let rep = |c: usize| if c == 1 { Word::generator(x) } else { Word::identity() };
    let target = (coset + images[g] as usize) % 2;
    rep(coset)
        .concat(&Word::generator(g))
        .concat(&rep(target).invert())
}

fn rewrite(relator: &Word, start: usize, index: &[[Option<usize>; 2]], images: &[u8]) -> Word {
    let mut coset = start;
    let mut letters = Vec::new();
    for (g, sign) in relator.letters() {
        if sign > 0 {
            if let Some(k) = index[g][coset] {
                letters.push((k, 1));
            }
            coset = (coset + images[g] as usize) % 2;
        } else {
            coset = (coset + images[g] as usize) % 2;
            if let Some(k) = index[g][coset] {
                letters.push((k, -1));
            }
        }
    }
    debug_assert_eq!(coset, start, "relators lie in the kernel");
    Word::from_letters(letters)
}

/// A double cover read off the closed-form table: either another sapphire
/// or a torus bundle.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum CoverKind {
    Sapphire(SapphireMatrix),
    TorusBundle(TorusBundleMatrix),
}

impl CoverKind {
    pub fn matrix(&self) -> Mat2Z {
        match self {
            CoverKind::Sapphire(m) => m.matrix(),
            CoverKind::TorusBundle(m) => m.matrix(),
        }
    }

    pub fn kind_name(&self) -> &'static str {
        match self {
            CoverKind::Sapphire(_) => "sapphire",
            CoverKind::TorusBundle(_) => "torus_bundle",
        }
    }
}

/// One double cover of a sapphire: the defining hom, its case label, and
/// the covering manifold's matrix.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct CoverDescriptor {
    pub case: CaseLabel,
    pub hom: Z2Hom,
    pub kind: CoverKind,
}

/// The closed-form double cover of `a` defined by `h`.
///
/// The table is stated for all-positive representatives (the determinant
/// sign variants of the derivation fold into the same manifold), so `a`
/// must have positive entries; it need not satisfy `r <= u`.
pub fn double_cover_matrix(a: &SapphireMatrix, h: &Z2Hom) -> Result<CoverDescriptor, Error> {
    h.validate_for(&pi1_sapphire(a))?;
    if !a.is_positive() {
        return Err(Error::RequiresPositiveEntries);
    }
    let case = h
        .case_label()
        .expect("sapphire presentations have three generators");
    let (r, s, t, u) = a.entries();
    let diag = r * u + s * t;
    let kind = match case {
        CaseLabel::I => CoverKind::Sapphire(
            SapphireMatrix::from_entries(diag, 2 * r * s, 2 * t * u, diag)
                .expect("case I covers stay unimodular with nonzero entries"),
        ),
        CaseLabel::III => CoverKind::Sapphire(
            SapphireMatrix::from_entries(diag, 2 * s * u, 2 * r * t, diag)
                .expect("case III covers stay unimodular with nonzero entries"),
        ),
        CaseLabel::V => {
            let e = a.det();
            CoverKind::TorusBundle(
                TorusBundleMatrix::new(Mat2Z::new(
                    e * diag,
                    -2 * e * r * t,
                    -2 * e * s * u,
                    e * diag,
                ))
                .expect("case V covers stay unimodular"),
            )
        }
        CaseLabel::II | CaseLabel::IV | CaseLabel::VI | CaseLabel::VII => {
            if s % 2 != 0 {
                return Err(Error::CaseRequiresEvenS);
            }
            CoverKind::Sapphire(
                SapphireMatrix::from_entries(r, s / 2, 2 * t, u)
                    .expect("halved covers stay unimodular with nonzero entries"),
            )
        }
    };
    Ok(CoverDescriptor { case, hom: h.clone(), kind })
}

/// All double covers of a canonical sapphire, in case order.
pub fn all_double_covers(a: &CanonicalSapphire) -> Vec<CoverDescriptor> {
    let p = pi1_sapphire(a.as_sapphire());
    enumerate_z2_homs(&p)
        .iter()
        .map(|h| {
            double_cover_matrix(a.as_sapphire(), h)
                .expect("enumerated homs are valid and canonical matrices are positive")
        })
        .collect()
}

/// A cover together with its first homology (closed formula for sapphire
/// covers, Smith normal form of the bundle presentation for case V).
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct CoverReport {
    pub cover: CoverDescriptor,
    pub h1: AbelianGroup,
}

impl CoverReport {
    pub fn new(cover: CoverDescriptor) -> Self {
        let h1 = match &cover.kind {
            CoverKind::Sapphire(m) => h1_sapphire(m),
            CoverKind::TorusBundle(m) => h1_of_presentation(&pi1_torus_bundle(m)),
        };
        CoverReport { cover, h1 }
    }
}

impl Serialize for CoverReport {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct HomImages {
            a: u8,
            b: u8,
            c: u8,
        }
        let images = self.cover.hom.images();
        let mut st = serializer.serialize_struct("CoverReport", 5)?;
        st.serialize_field("case", &self.cover.case)?;
        st.serialize_field(
            "hom",
            &HomImages { a: images[0], b: images[1], c: images[2] },
        )?;
        st.serialize_field("kind", self.cover.kind.kind_name())?;
        st.serialize_field("matrix", &self.cover.kind.matrix())?;
        st.serialize_field("h1", &self.h1)?;
        st.end()
    }
}

/// Reports for every double cover of a canonical sapphire.
pub fn all_cover_reports(a: &CanonicalSapphire) -> Vec<CoverReport> {
    all_double_covers(a).into_iter().map(CoverReport::new).collect()
}

/// Equivalence status of a class of homs.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ClassStatus {
    ProvenDistinct,
    ProvenEquivalent,
    Unknown,
}

/// One equivalence class of homs, by case label.
#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct HomClass {
    pub cases: Vec<CaseLabel>,
    pub status: ClassStatus,
}

/// Partition of the valid homs of a sapphire into equivalence classes.
#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct HomPartition {
    pub classes: Vec<HomClass>,
}

impl HomPartition {
    /// Case labels covered by the partition, flattened.
    pub fn case_labels(&self) -> Vec<CaseLabel> {
        let mut labels: Vec<CaseLabel> =
            self.classes.iter().flat_map(|c| c.cases.iter().copied()).collect();
        labels.sort();
        labels
    }
}

/// The partition of the homs of a canonical sapphire into equivalence
/// classes:
///
/// * `{II, IV, VI, VII}` (present only when `s` is even) is one proven
///   class;
/// * `{V}` is proven distinct, being the only torus-bundle cover;
/// * `{I}` and `{III}` are proven distinct when `r != u`; when `r = u`
///   their covers are homeomorphic but the equivalence of the pairs is an
///   open question, reported as a single class of status `Unknown`.
pub fn hom_equivalence_classes(a: &CanonicalSapphire) -> HomPartition {
    let (r, s, _, u) = a.entries();
    let mut classes = Vec::new();
    if r == u {
        classes.push(HomClass {
            cases: vec![CaseLabel::I, CaseLabel::III],
            status: ClassStatus::Unknown,
        });
    } else {
        classes.push(HomClass { cases: vec![CaseLabel::I], status: ClassStatus::ProvenDistinct });
        classes
            .push(HomClass { cases: vec![CaseLabel::III], status: ClassStatus::ProvenDistinct });
    }
    classes.push(HomClass { cases: vec![CaseLabel::V], status: ClassStatus::ProvenDistinct });
    if s % 2 == 0 {
        classes.push(HomClass {
            cases: vec![CaseLabel::II, CaseLabel::IV, CaseLabel::VI, CaseLabel::VII],
            status: ClassStatus::ProvenEquivalent,
        });
    }
    HomPartition { classes }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::canon::canonical_form;
    use crate::intlinalg::AbelianGroup;

    fn sapphire(r: i64, s: i64, t: i64, u: i64) -> SapphireMatrix {
        SapphireMatrix::from_entries(r, s, t, u).unwrap()
    }

    fn hom(p: &Presentation, images: &[u8]) -> Z2Hom {
        Z2Hom::new(images.to_vec(), p).unwrap()
    }

    #[test]
    fn hom_enumeration_respects_parity_of_s() {
        // s odd: the three cases with b -> 0 survive.
        let p = pi1_sapphire(&sapphire(1, 1, 1, 2));
        let homs = enumerate_z2_homs(&p);
        let labels: Vec<CaseLabel> = homs.iter().map(|h| h.case_label().unwrap()).collect();
        assert_eq!(labels, vec![CaseLabel::I, CaseLabel::III, CaseLabel::V]);

        // s even: all seven.
        let p = pi1_sapphire(&sapphire(1, 2, 1, 3));
        assert_eq!(enumerate_z2_homs(&p).len(), 7);

        // Free group on two generators: every nonzero vector works.
        let free = Presentation::new(["x", "y"], vec![]);
        assert_eq!(enumerate_z2_homs(&free).len(), 3);
    }

    #[test]
    fn hom_validation_errors() {
        let p = pi1_sapphire(&sapphire(1, 1, 1, 2));
        assert!(matches!(
            Z2Hom::new(vec![0, 0, 0], &p),
            Err(Error::InvalidHom(_))
        ));
        // b -> 1 does not kill relator 2 when s is odd.
        assert!(matches!(
            Z2Hom::new(vec![0, 1, 0], &p),
            Err(Error::InvalidHom(_))
        ));
        assert!(matches!(
            Z2Hom::new(vec![1, 0], &p),
            Err(Error::InvalidHom(_))
        ));
    }

    #[test]
    fn schreier_generators_of_rank_one_free_group() {
        // <x | > with x -> 1: kernel is generated by x^2, free of rank 1.
        let free = Presentation::new(["x"], vec![]);
        let h = hom(&free, &[1]);
        let kernel = reidemeister_schreier(&free, &h).unwrap();
        assert_eq!(kernel.generator_count(), 1);
        assert_eq!(kernel.generator_names(), &["x^2".to_string()]);
        assert!(kernel.relators().is_empty());
    }

    #[test]
    fn schreier_generators_of_rank_two_free_group() {
        // <x, y | > with x -> 1, y -> 0: kernel free of rank 3 = 1 + 2(2-1).
        let free = Presentation::new(["x", "y"], vec![]);
        let h = hom(&free, &[1, 0]);
        let kernel = reidemeister_schreier(&free, &h).unwrap();
        assert_eq!(kernel.generator_count(), 3);
        assert_eq!(h1_of_presentation(&kernel), AbelianGroup::free(3));
    }

    #[test]
    fn kernel_generator_names_follow_transversal_order() {
        let p = pi1_sapphire(&sapphire(1, 1, 1, 2));
        let kernel = reidemeister_schreier(&p, &hom(&p, &[1, 0, 0])).unwrap();
        assert_eq!(
            kernel.generator_names(),
            &["b", "c", "a^2", "a b a^-1", "a c a^-1"]
                .map(str::to_string)
        );
        assert_eq!(kernel.relators().len(), 6);
    }

    #[test]
    fn kernel_homology_matches_cover_homology() {
        // Case I of [[1,1],[1,2]] covers by [[3,2],[4,3]], whose homology is
        // Z_16 + Z_2 + Z_2.
        let a = sapphire(1, 1, 1, 2);
        let p = pi1_sapphire(&a);
        let kernel = reidemeister_schreier(&p, &hom(&p, &[1, 0, 0])).unwrap();
        let expected = AbelianGroup::from_cyclic_orders(&[16, 2, 2], 0);
        assert_eq!(h1_of_presentation(&kernel), expected);
        assert_eq!(h1_sapphire(&sapphire(3, 2, 4, 3)), expected);
    }

    #[test]
    fn cover_table_examples() {
        let a = sapphire(1, 1, 1, 2);
        let p = pi1_sapphire(&a);
        let case_i = double_cover_matrix(&a, &hom(&p, &[1, 0, 0])).unwrap();
        assert_eq!(case_i.case, CaseLabel::I);
        assert_eq!(case_i.kind.matrix(), Mat2Z::new(3, 2, 4, 3));
        assert_eq!(case_i.kind.kind_name(), "sapphire");

        let case_v = double_cover_matrix(&a, &hom(&p, &[1, 0, 1])).unwrap();
        assert_eq!(case_v.case, CaseLabel::V);
        assert_eq!(case_v.kind.matrix(), Mat2Z::new(3, -2, -4, 3));
        assert_eq!(case_v.kind.kind_name(), "torus_bundle");

        let b = sapphire(1, 2, 1, 3);
        let pb = pi1_sapphire(&b);
        let case_ii = double_cover_matrix(&b, &hom(&pb, &[0, 1, 0])).unwrap();
        assert_eq!(case_ii.kind.matrix(), Mat2Z::new(1, 1, 2, 3));
    }

    #[test]
    fn halved_cases_produce_identical_matrices() {
        let b = sapphire(1, 2, 1, 3);
        let covers = all_double_covers(&canonical_form(&b).unwrap());
        assert_eq!(covers.len(), 7);
        let halved: Vec<Mat2Z> = covers
            .iter()
            .filter(|c| c.case.requires_even_s())
            .map(|c| c.kind.matrix())
            .collect();
        assert_eq!(halved.len(), 4);
        assert!(halved.iter().all(|m| *m == halved[0]));
    }

    #[test]
    fn cover_table_requires_positive_entries() {
        let a = sapphire(-1, -1, -1, -2);
        let p = pi1_sapphire(&a);
        let h = hom(&p, &[1, 0, 0]);
        assert_eq!(
            double_cover_matrix(&a, &h),
            Err(Error::RequiresPositiveEntries)
        );
    }

    #[test]
    fn hom_partition_cases() {
        // r != u, s odd: three singleton classes.
        let part = hom_equivalence_classes(&canonical_form(&sapphire(1, 1, 1, 2)).unwrap());
        assert_eq!(part.classes.len(), 3);
        assert!(part.classes.iter().all(|c| c.status == ClassStatus::ProvenDistinct));
        assert_eq!(
            part.case_labels(),
            vec![CaseLabel::I, CaseLabel::III, CaseLabel::V]
        );

        // r != u, s even: the four-element class joins.
        let part = hom_equivalence_classes(&canonical_form(&sapphire(1, 2, 1, 3)).unwrap());
        assert_eq!(part.classes.len(), 4);
        assert_eq!(part.case_labels(), CaseLabel::all().to_vec());

        // r = u: cases I and III merge with unknown status.
        let part = hom_equivalence_classes(&canonical_form(&sapphire(3, 2, 4, 3)).unwrap());
        let merged = &part.classes[0];
        assert_eq!(merged.cases, vec![CaseLabel::I, CaseLabel::III]);
        assert_eq!(merged.status, ClassStatus::Unknown);
        assert_eq!(part.classes.len(), 3);
    }

    #[test]
    fn cover_report_serializes_to_documented_shape() {
        let canon = canonical_form(&sapphire(1, 1, 1, 2)).unwrap();
        let reports = all_cover_reports(&canon);
        let json = serde_json::to_value(&reports[0]).unwrap();
        assert_eq!(json["case"], "I");
        assert_eq!(json["hom"]["a"], 1);
        assert_eq!(json["kind"], "sapphire");
        assert_eq!(json["matrix"][0][0], 3);
        assert_eq!(json["h1"]["torsion"][2], 16);
    }
}
