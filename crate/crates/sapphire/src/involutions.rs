//! Classification of free involutions on a sapphire and the Borsuk-Ulam
//! verdicts for maps into R^n.
//!
//! A free involution on a sapphire is the deck transformation of a double
//! covering, so classifying involutions on `S_A` means finding every
//! sapphire whose cover table produces `A`. Reading the table backwards:
//!
//! * a case II/IV/VI/VII cover of `[[a', s'], [t', d']]` is
//!   `[[a', s'/2], [2t', d']]`, so `A = [[a, b], [c, d]]` arises this way
//!   exactly when `c` is even, from the quotient `[[a, 2b], [c/2, d]]`;
//! * case I and case III covers have equal diagonal and even off-diagonal
//!   entries, so they can produce `A` only when `|a| = |d|` with `b, c`
//!   even, and the quotients come from factoring the systems
//!   `a = ru + st, b = 2rs, c = 2tu` (case I) and
//!   `a = ru + st, b = 2su, c = 2rt` (case III);
//! * case V covers are torus bundles, never sapphires.
//!
//! The factorization solvers distribute the prime powers of `b/2` and
//! `c/2` between the two coprime halves `(a+1)/2` and `(a-1)/2`, which
//! pins down exactly two positive solutions of each system.

use serde::Serialize;

use crate::canon::{canonical_form, homeomorphic};
use crate::error::Error;
use crate::intlinalg::{factorize, valuation, FactorMap, Mat2Z};
use crate::presentations::SapphireMatrix;

/// How many equivalence classes of free involutions a sapphire admits.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum InvolutionCount {
    /// No free involutions at all.
    None,
    ExactlyOne,
    ExactlyThree,
    /// At least three and at most five; the degenerate factorization case
    /// leaves the exact count open.
    ThreeToFive,
}

/// A quotient manifold, reported both as the matrix produced by the
/// classification and in canonical form.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
pub struct Quotient {
    pub raw: Mat2Z,
    pub canonical: Mat2Z,
}

impl Quotient {
    fn new(raw: Mat2Z) -> Self {
        let m = SapphireMatrix::new(raw).expect("classification quotients are valid sapphires");
        let canonical = canonical_form(&m)
            .expect("valid sapphire matrices have a canonical form")
            .matrix();
        Quotient { raw, canonical }
    }
}

/// Outcome of the involution classification.
#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct InvolutionReport {
    pub count: InvolutionCount,
    /// Quotient manifolds, deduplicated up to homeomorphism.
    pub quotients: Vec<Quotient>,
    pub notes: Vec<String>,
}

/// Borsuk-Ulam answer for one value of n.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum BuOutcome {
    Holds,
    Fails,
    /// The manifold has no free involutions, so there is no triple to ask
    /// about.
    VacuousNoInvolution,
}

/// Borsuk-Ulam verdict for maps into R^n, with a one-line rationale.
#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct BuVerdict {
    pub n: u32,
    pub verdict: BuOutcome,
    pub rationale: String,
}

fn down_preconditions(a: i64, b: i64, c: i64, d: i64) -> Result<(i64, i64), Error> {
    let mut failed = Vec::new();
    if a != d {
        failed.push("a = d".to_string());
    }
    if a % 2 == 0 {
        failed.push("a odd".to_string());
    }
    if a == 0 || b == 0 || c == 0 || d == 0 {
        failed.push("all entries nonzero".to_string());
    }
    if b % 2 != 0 {
        failed.push("b even".to_string());
    }
    if c % 2 != 0 {
        failed.push("c even".to_string());
    }
    if a * d - b * c != 1 {
        failed.push("det = 1".to_string());
    }
    if a < 0 || b < 0 || c < 0 {
        failed.push("entries positive".to_string());
    }
    if failed.is_empty() {
        Ok((b / 2, c / 2))
    } else {
        Err(Error::Precondition(failed.join(", ")))
    }
}

/// The product of the prime powers of `x` supported on the primes of
/// `basis`.
fn prime_part(x: i64, basis: &FactorMap) -> i64 {
    basis
        .factors()
        .iter()
        .map(|&(p, _)| {
            let e = valuation(x, p).expect("x is nonzero and p prime");
            (p as i64).pow(e)
        })
        .product()
}

fn down_solutions(a: i64, b: i64, c: i64, d: i64) -> Result<(Mat2Z, Mat2Z), Error> {
    let (beta, gamma) = down_preconditions(a, b, c, d)?;
    // With det = 1 and a odd, beta * gamma = (a+1)/2 * (a-1)/2 and the two
    // halves are coprime, so the entries above are nonzero and a >= 3.
    let plus = factorize((a + 1) / 2).expect("a >= 3 after the precondition checks");
    let minus = factorize((a - 1) / 2).expect("a >= 3 after the precondition checks");
    let first = Mat2Z::new(
        prime_part(beta, &minus),
        prime_part(beta, &plus),
        prime_part(gamma, &plus),
        prime_part(gamma, &minus),
    );
    let second = Mat2Z::new(
        prime_part(beta, &plus),
        prime_part(beta, &minus),
        prime_part(gamma, &minus),
        prime_part(gamma, &plus),
    );
    Ok((first, second))
}

/// The two positive matrices `[[r, s], [t, u]]` solving
/// `a = ru + st, b = 2rs, c = 2tu` - the sapphires whose case I cover is
/// `[[a, b], [c, d]]`.
///
/// Requires `a = d` odd positive, `b, c` even positive, determinant 1.
pub fn solve_sapphire_down1(
    a: i64,
    b: i64,
    c: i64,
    d: i64,
) -> Result<(SapphireMatrix, SapphireMatrix), Error> {
    let (first, second) = down_solutions(a, b, c, d)?;
    debug_assert!(satisfies_system1(&first, a, b, c) && satisfies_system1(&second, a, b, c));
    Ok((
        SapphireMatrix::new(first).expect("solutions are positive and unimodular"),
        SapphireMatrix::new(second).expect("solutions are positive and unimodular"),
    ))
}

/// The two positive matrices `[[r, s], [t, u]]` solving
/// `a = ru + st, b = 2su, c = 2rt` - the sapphires whose case III cover is
/// `[[a, b], [c, d]]`. Same hypotheses as [`solve_sapphire_down1`]; the
/// solutions are the diagonal swaps of the case I ones.
pub fn solve_sapphire_down3(
    a: i64,
    b: i64,
    c: i64,
    d: i64,
) -> Result<(SapphireMatrix, SapphireMatrix), Error> {
    let (first, second) = down_solutions(a, b, c, d)?;
    let swap = |m: Mat2Z| Mat2Z::new(m.u, m.s, m.t, m.r);
    let (first, second) = (swap(first), swap(second));
    debug_assert!(satisfies_system3(&first, a, b, c) && satisfies_system3(&second, a, b, c));
    Ok((
        SapphireMatrix::new(first).expect("solutions are positive and unimodular"),
        SapphireMatrix::new(second).expect("solutions are positive and unimodular"),
    ))
}

fn satisfies_system1(m: &Mat2Z, a: i64, b: i64, c: i64) -> bool {
    m.r * m.u + m.s * m.t == a && 2 * m.r * m.s == b && 2 * m.t * m.u == c
}

fn satisfies_system3(m: &Mat2Z, a: i64, b: i64, c: i64) -> bool {
    m.r * m.u + m.s * m.t == a && 2 * m.s * m.u == b && 2 * m.r * m.t == c
}

fn dedup_quotients(raw: Vec<Mat2Z>) -> Vec<Quotient> {
    let mut out: Vec<Quotient> = Vec::new();
    for m in raw {
        let q = Quotient::new(m);
        if !out.iter().any(|seen| seen.canonical == q.canonical) {
            out.push(q);
        }
    }
    out
}

/// Classify the free involutions on the sapphire with gluing matrix `m`.
///
/// The matrix is not required to be canonical or positive; the relevant
/// conditions (parities of the off-diagonal entries and `|a| = |d|`) are
/// orbit invariants.
pub fn classify_involutions(m: &SapphireMatrix) -> InvolutionReport {
    let (a, b, c, d) = m.entries();
    if c % 2 != 0 {
        return InvolutionReport {
            count: InvolutionCount::None,
            quotients: Vec::new(),
            notes: vec!["no free involutions: the c entry is odd".to_string()],
        };
    }
    let halved = Mat2Z::new(a, 2 * b, c / 2, d);
    if b % 2 != 0 {
        return InvolutionReport {
            count: InvolutionCount::ExactlyOne,
            quotients: vec![Quotient::new(halved)],
            notes: vec![
                "b odd: the unique class comes from the covers sending b to 1".to_string(),
            ],
        };
    }
    if a.abs() != d.abs() {
        return InvolutionReport {
            count: InvolutionCount::ExactlyOne,
            quotients: vec![Quotient::new(halved)],
            notes: vec![
                "b, c even with |a| != |d|: only the covers sending b to 1 reach this matrix"
                    .to_string(),
            ],
        };
    }
    // b, c even and |a| = |d|: the equal-diagonal factorizations kick in.
    let canon = canonical_form(m).expect("valid sapphire matrices have a canonical form");
    let (ca, cb, cc, cd) = canon.entries();
    let (first, second) = solve_sapphire_down1(ca, cb, cc, cd)
        .expect("canonical matrices with equal diagonal and even off-diagonal satisfy the solver hypotheses");
    let quotients = dedup_quotients(vec![halved, first.matrix(), second.matrix()]);
    let (r, s, t, u) = first.entries();
    if r != u && s != t {
        InvolutionReport {
            count: InvolutionCount::ExactlyThree,
            quotients,
            notes: vec![
                "quotients realized via the b -> 1 covers, a case I cover, and a case III cover"
                    .to_string(),
            ],
        }
    } else {
        InvolutionReport {
            count: InvolutionCount::ThreeToFive,
            quotients,
            notes: vec![
                "degenerate factorization (r = u or s = t): between three and five involution classes"
                    .to_string(),
                "the count bounds involution classes; the distinct quotient manifolds are listed"
                    .to_string(),
            ],
        }
    }
}

/// Borsuk-Ulam verdict for the triple (sapphire, any free involution, R^n).
///
/// The answer depends only on the manifold: for n = 3 it holds exactly
/// when `c` is even and `b` odd, and in that case there is a single class
/// of involutions; for n = 2 it always holds because first homology is
/// finite. The n = 1 and n >= 4 verdicts are standard general-position
/// facts recorded for completeness.
pub fn borsuk_ulam(m: &SapphireMatrix, n: u32) -> Result<BuVerdict, Error> {
    if n == 0 {
        return Err(Error::Domain("the Borsuk-Ulam question needs n >= 1".to_string()));
    }
    let report = classify_involutions(m);
    if report.count == InvolutionCount::None {
        return Ok(BuVerdict {
            n,
            verdict: BuOutcome::VacuousNoInvolution,
            rationale: "no free involutions exist".to_string(),
        });
    }
    let (_, b, c, _) = m.entries();
    let (verdict, rationale) = match n {
        1 => (
            BuOutcome::Holds,
            "maps to the line identify an orbit by connectedness (outside the classification)",
        ),
        2 => (
            BuOutcome::Holds,
            "first homology is finite, which forces the property for maps to the plane",
        ),
        3 => {
            if c % 2 == 0 && b % 2 != 0 {
                (BuOutcome::Holds, "c is even and b is odd; the involution class is unique")
            } else {
                (BuOutcome::Fails, "fails unless c is even and b is odd")
            }
        }
        _ => (
            BuOutcome::Fails,
            "the target dimension exceeds the manifold dimension, so an equivariant map to the sphere exists",
        ),
    };
    Ok(BuVerdict { n, verdict, rationale: rationale.to_string() })
}

/// Do two involution reports agree up to homeomorphism of the quotients?
pub fn reports_equivalent(lhs: &InvolutionReport, rhs: &InvolutionReport) -> bool {
    if lhs.count != rhs.count || lhs.quotients.len() != rhs.quotients.len() {
        return false;
    }
    lhs.quotients.iter().all(|q| {
        let qm = SapphireMatrix::new(q.canonical).expect("stored quotients are valid");
        rhs.quotients.iter().any(|other| {
            let om = SapphireMatrix::new(other.canonical).expect("stored quotients are valid");
            homeomorphic(&qm, &om)
        })
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sapphire(r: i64, s: i64, t: i64, u: i64) -> SapphireMatrix {
        SapphireMatrix::from_entries(r, s, t, u).unwrap()
    }

    #[test]
    fn down1_solves_the_small_cases() {
        let (first, second) = solve_sapphire_down1(3, 2, 4, 3).unwrap();
        assert_eq!(first.matrix(), Mat2Z::new(1, 1, 2, 1));
        assert_eq!(second.matrix(), Mat2Z::new(1, 1, 1, 2));

        let (first, second) = solve_sapphire_down1(5, 4, 6, 5).unwrap();
        assert_eq!(first.matrix(), Mat2Z::new(2, 1, 3, 1));
        assert_eq!(second.matrix(), Mat2Z::new(1, 2, 1, 3));
    }

    #[test]
    fn down3_solutions_swap_the_diagonal() {
        let (first, second) = solve_sapphire_down3(3, 2, 4, 3).unwrap();
        assert_eq!(first.matrix(), Mat2Z::new(1, 1, 2, 1));
        assert_eq!(second.matrix(), Mat2Z::new(2, 1, 1, 1));

        let (d1, d2) = solve_sapphire_down1(5, 4, 6, 5).unwrap();
        let (t1, t2) = solve_sapphire_down3(5, 4, 6, 5).unwrap();
        let swap = |m: Mat2Z| Mat2Z::new(m.u, m.s, m.t, m.r);
        assert_eq!(t1.matrix(), swap(d1.matrix()));
        assert_eq!(t2.matrix(), swap(d2.matrix()));
    }

    #[test]
    fn down_preconditions_name_the_failure() {
        match solve_sapphire_down1(3, 2, 4, 5) {
            Err(Error::Precondition(msg)) => assert!(msg.contains("a = d"), "{msg}"),
            other => panic!("expected a precondition failure, got {other:?}"),
        }
        match solve_sapphire_down3(4, 2, 4, 4) {
            Err(Error::Precondition(msg)) => assert!(msg.contains("a odd"), "{msg}"),
            other => panic!("expected a precondition failure, got {other:?}"),
        }
        assert!(solve_sapphire_down1(-3, -2, -4, -3).is_err());
    }

    #[test]
    fn classification_examples() {
        // c odd: nothing.
        let report = classify_involutions(&sapphire(1, 1, 1, 2));
        assert_eq!(report.count, InvolutionCount::None);
        assert!(report.quotients.is_empty());

        // c even, b odd: one class, quotient [[1,2],[1,3]].
        let report = classify_involutions(&sapphire(1, 1, 2, 3));
        assert_eq!(report.count, InvolutionCount::ExactlyOne);
        assert_eq!(report.quotients.len(), 1);
        assert_eq!(report.quotients[0].raw, Mat2Z::new(1, 2, 1, 3));

        // b, c even, a = d, nondegenerate: exactly three.
        let report = classify_involutions(&sapphire(5, 4, 6, 5));
        assert_eq!(report.count, InvolutionCount::ExactlyThree);
        let raw: Vec<Mat2Z> = report.quotients.iter().map(|q| q.raw).collect();
        assert_eq!(
            raw,
            vec![Mat2Z::new(5, 8, 3, 5), Mat2Z::new(2, 1, 3, 1), Mat2Z::new(1, 2, 1, 3)]
        );

        // Degenerate factorization: bounded between three and five.
        let report = classify_involutions(&sapphire(3, 2, 4, 3));
        assert_eq!(report.count, InvolutionCount::ThreeToFive);
        assert_eq!(report.quotients.len(), 3);
    }

    #[test]
    fn exactly_three_quotients_are_pairwise_distinct() {
        let report = classify_involutions(&sapphire(5, 4, 6, 5));
        for (i, q) in report.quotients.iter().enumerate() {
            for other in &report.quotients[i + 1..] {
                let qm = SapphireMatrix::new(q.raw).unwrap();
                let om = SapphireMatrix::new(other.raw).unwrap();
                assert!(!homeomorphic(&qm, &om));
            }
        }
    }

    #[test]
    fn borsuk_ulam_examples() {
        let check = |m: &SapphireMatrix, n: u32, expected: BuOutcome| {
            assert_eq!(borsuk_ulam(m, n).unwrap().verdict, expected);
        };
        let holds3 = sapphire(1, 1, 2, 3);
        check(&holds3, 3, BuOutcome::Holds);
        check(&holds3, 2, BuOutcome::Holds);
        check(&holds3, 1, BuOutcome::Holds);
        check(&holds3, 4, BuOutcome::Fails);

        check(&sapphire(3, 2, 4, 3), 3, BuOutcome::Fails);
        check(&sapphire(1, 1, 1, 2), 3, BuOutcome::VacuousNoInvolution);

        assert!(borsuk_ulam(&holds3, 0).is_err());
    }

    #[test]
    fn bu_holds_for_r3_only_with_unique_involution() {
        let m = sapphire(1, 1, 2, 3);
        let verdict = borsuk_ulam(&m, 3).unwrap();
        assert_eq!(verdict.verdict, BuOutcome::Holds);
        assert_eq!(classify_involutions(&m).count, InvolutionCount::ExactlyOne);
    }
}
