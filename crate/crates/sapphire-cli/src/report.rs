//! Report structures and rendering for the CLI: the atlas row schema,
//! JSON/CSV emission, and aligned text tables.

use serde::Serialize;

use sapphire::{
    all_cover_reports, borsuk_ulam, classify_involutions, h1_sapphire, hom_equivalence_classes,
    AbelianGroup, BuOutcome, CanonicalSapphire, CoverReport, HomPartition, InvolutionReport,
    Mat2Z,
};

/// Verdict map for the interesting target dimensions.
#[derive(Clone, Serialize)]
pub struct BuMap {
    pub n1: BuOutcome,
    pub n2: BuOutcome,
    pub n3: BuOutcome,
    #[serde(rename = "n>=4")]
    pub n_ge4: BuOutcome,
}

impl BuMap {
    pub fn compute(m: &sapphire::SapphireMatrix) -> Self {
        let verdict = |n| borsuk_ulam(m, n).expect("n >= 1").verdict;
        BuMap { n1: verdict(1), n2: verdict(2), n3: verdict(3), n_ge4: verdict(4) }
    }
}

pub fn outcome_text(outcome: BuOutcome) -> &'static str {
    match outcome {
        BuOutcome::Holds => "holds",
        BuOutcome::Fails => "fails",
        BuOutcome::VacuousNoInvolution => "vacuous",
    }
}

/// One line of the atlas: every invariant of one homeomorphism class,
/// recomputable from `matrix` alone.
#[derive(Clone, Serialize)]
pub struct AtlasRow {
    pub matrix: Mat2Z,
    pub canonical: Mat2Z,
    pub det: i64,
    pub h1: AbelianGroup,
    pub covers: Vec<CoverReport>,
    pub hom_partition: HomPartition,
    pub involutions: InvolutionReport,
    pub bu: BuMap,
}

impl AtlasRow {
    pub fn compute(canon: &CanonicalSapphire) -> Self {
        let m = canon.as_sapphire();
        AtlasRow {
            matrix: canon.matrix(),
            canonical: canon.matrix(),
            det: m.det(),
            h1: h1_sapphire(m),
            covers: all_cover_reports(canon),
            hom_partition: hom_equivalence_classes(canon),
            involutions: classify_involutions(m),
            bu: BuMap::compute(m),
        }
    }
}

/// Dot-separated invariant factors (`4.4`), with free summands first as
/// `Z`; the trivial group flattens to `0`.
pub fn h1_csv(h1: &AbelianGroup) -> String {
    if h1.is_trivial() {
        return "0".to_string();
    }
    let mut parts: Vec<String> = std::iter::repeat("Z".to_string())
        .take(h1.free_rank())
        .collect();
    parts.extend(h1.invariant_factors().iter().map(|d| d.to_string()));
    parts.join(".")
}

pub fn atlas_csv(rows: &[AtlasRow]) -> String {
    let mut out = String::from(
        "matrix,canonical,det,h1,covers,involution_count,quotients,bu_n1,bu_n2,bu_n3,bu_nge4\n",
    );
    for row in rows {
        let covers: Vec<String> = row
            .covers
            .iter()
            .map(|c| {
                let kind = match c.cover.kind {
                    sapphire::CoverKind::Sapphire(_) => "S",
                    sapphire::CoverKind::TorusBundle(_) => "T",
                };
                format!("{}:{}:{}", c.cover.case, kind, c.cover.kind.matrix())
            })
            .collect();
        let quotients: Vec<String> = row
            .involutions
            .quotients
            .iter()
            .map(|q| q.canonical.to_string())
            .collect();
        let count = serde_json::to_value(row.involutions.count)
            .expect("counts serialize to strings")
            .as_str()
            .expect("counts serialize to strings")
            .to_string();
        out.push_str(&format!(
            "{},{},{},{},{},{},{},{},{},{},{}\n",
            row.matrix,
            row.canonical,
            row.det,
            h1_csv(&row.h1),
            if covers.is_empty() { "-".to_string() } else { covers.join("|") },
            count,
            if quotients.is_empty() { "-".to_string() } else { quotients.join("|") },
            outcome_text(row.bu.n1),
            outcome_text(row.bu.n2),
            outcome_text(row.bu.n3),
            outcome_text(row.bu.n_ge4),
        ));
    }
    out
}

/// Aligned two-dimensional text table.
pub fn render_table(headers: &[&str], rows: &[Vec<String>]) -> String {
    let mut widths: Vec<usize> = headers.iter().map(|h| h.len()).collect();
    for row in rows {
        for (i, cell) in row.iter().enumerate() {
            widths[i] = widths[i].max(cell.len());
        }
    }
    let mut out = String::new();
    let render_row = |cells: Vec<String>, out: &mut String| {
        let line: Vec<String> = cells
            .iter()
            .enumerate()
            .map(|(i, c)| format!("{:<width$}", c, width = widths[i]))
            .collect();
        out.push_str(line.join("  ").trim_end());
        out.push('\n');
    };
    render_row(headers.iter().map(|h| h.to_string()).collect(), &mut out);
    for row in rows {
        render_row(row.clone(), &mut out);
    }
    out
}
