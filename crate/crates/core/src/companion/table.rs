//! Arnold's fourteen exceptional weight triples, each realized as the quotient
//! of a smooth curve, with every numeric column recomputed and compared to the
//! published values.

use std::fmt;

use num_bigint::{BigInt, BigUint};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::polyhedral::{
    companion_quotient, permutation_realization, polyhedral_realize, PolyhedralGroup,
    RealizationRecord,
};
use super::big_pow;
use crate::perm::{parse_cycles, DEFAULT_CAP};
use crate::rational::ExactRational;

/// A row as published, kept verbatim even where it is wrong.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PrintedRow {
    pub group: String,
    #[serde(with = "crate::serde_util::biguint")]
    pub group_order: BigUint,
    /// `|G|` as typeset, e.g. `2^29*60`.
    pub group_order_text: String,
    pub neg_chi_quotient: ExactRational,
    #[serde(with = "crate::serde_util::bigint")]
    pub neg_chi_cover: BigInt,
    #[serde(with = "crate::serde_util::biguint")]
    pub genus: BigUint,
    pub curve: String,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum RowFlag {
    /// A printed numeric column disagrees with the recomputation.
    InconsistentPaperRow,
    /// The printed curve label contains an evident typo (kept verbatim).
    LabelTypo,
}

impl fmt::Display for RowFlag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            RowFlag::InconsistentPaperRow => "INCONSISTENT_PAPER_ROW",
            RowFlag::LabelTypo => "LABEL_TYPO",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ArnoldRow {
    pub weights: [u64; 3],
    pub printed: PrintedRow,
    pub recomputed: RealizationRecord,
    /// Columns whose printed value differs from the recomputed one.
    pub mismatches: Vec<String>,
    pub flags: Vec<RowFlag>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

impl ArnoldRow {
    pub fn consistent(&self) -> bool {
        self.mismatches.is_empty()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AuditSummary {
    pub rows: usize,
    pub consistent: usize,
    pub inconsistent: Vec<[u64; 3]>,
}

enum Source {
    Polyhedral(PolyhedralGroup, [u8; 3], u64, u64),
    Companion(&'static [u64], PolyhedralGroup),
    Permutations(&'static str, [&'static str; 2]),
}

struct Entry {
    weights: [u64; 3],
    source: Source,
    group: &'static str,
    order: (BigUint, &'static str),
    neg_chi_quotient: (i64, i64),
    neg_chi_cover: BigInt,
    genus: BigUint,
    curve: &'static str,
    note: Option<&'static str>,
}

fn n(v: u64) -> BigUint {
    BigUint::from(v)
}

fn entries() -> Vec<Entry> {
    use PolyhedralGroup::*;
    use Source::*;
    let fermat4 = "F4: x^4+y^4+z^4";
    let mut rows = vec![
        Entry {
            weights: [2, 3, 7],
            source: Permutations("G168", ["(1,2)(3,6)", "(1,2,3,4,5,6,7)"]),
            group: "G168",
            order: (n(168), "168"),
            neg_chi_quotient: (1, 42),
            neg_chi_cover: 4.into(),
            genus: n(3),
            curve: "K4: x^3y+y^3z+z^3x",
            note: None,
        },
        Entry {
            weights: [2, 3, 8],
            source: Polyhedral(Dihedral(3), [0, 1, 0], 4, 0),
            group: "mu_4^3/mu_4 x| D3",
            order: (n(96), "96"),
            neg_chi_quotient: (1, 24),
            neg_chi_cover: 4.into(),
            genus: n(3),
            curve: fermat4,
            note: None,
        },
        Entry {
            weights: [2, 3, 9],
            source: Polyhedral(Platonic(3), [0, 0, 1], 3, 0),
            group: "mu_3^4/mu_e x| A4",
            order: (n(396), "396"),
            neg_chi_quotient: (2, 3),
            neg_chi_cover: 18.into(),
            genus: n(10),
            curve: "Y[3,3,3,3]",
            note: Some(
                "printed |G| = 396 and -chi_X = 2/3; 4 points of weight 3 under A4 give \
                 3^3*12 = 324 and -chi_X = 1/18, and 324/18 = 18 matches the printed -chi_M and g_M",
            ),
        },
        Entry {
            weights: [2, 4, 5],
            source: Polyhedral(Dihedral(5), [0, 1, 0], 2, 0),
            group: "mu_2^5/mu_2 x| D5",
            order: (n(160), "160"),
            neg_chi_quotient: (1, 20),
            neg_chi_cover: 8.into(),
            genus: n(5),
            curve: "Y[2,2,2,2,2]",
            note: None,
        },
        Entry {
            weights: [2, 4, 6],
            source: Companion(&[3, 6, 6], Dihedral(2)),
            group: "(mu_3 x mu_6^2)/mu_6 x| D2",
            order: (n(72), "72"),
            neg_chi_quotient: (1, 12),
            neg_chi_cover: 6.into(),
            genus: n(4),
            curve: "Y[3,6,6]",
            note: None,
        },
        Entry {
            weights: [2, 4, 6],
            source: Polyhedral(Dihedral(6), [0, 1, 0], 2, 0),
            group: "mu_2^6/mu_2 x| D6",
            order: (n(384), "384"),
            neg_chi_quotient: (1, 12),
            neg_chi_cover: 32.into(),
            genus: n(17),
            curve: "Y[2,2,2,2,2,2]",
            note: None,
        },
        Entry {
            weights: [2, 4, 7],
            source: Permutations("G168", ["(3,4)(5,7)", "(1,2,3,4,5,6,7)"]),
            group: "G168",
            order: (n(168), "168"),
            neg_chi_quotient: (3, 28),
            neg_chi_cover: 18.into(),
            genus: n(10),
            curve: "5x^2y^2z^2-(xy^5+yz^5+zx^5)",
            note: None,
        },
        Entry {
            weights: [2, 4, 7],
            source: Polyhedral(Dihedral(7), [0, 1, 0], 2, 0),
            group: "mu_2^7/mu_2 x| D7",
            order: (big_pow(2, 7) * n(7), "2^7*7"),
            neg_chi_quotient: (3, 28),
            neg_chi_cover: 96.into(),
            genus: n(49),
            curve: "Y[2,2,2,2,2,2,2]",
            note: None,
        },
        Entry {
            weights: [2, 5, 5],
            source: Polyhedral(Cyclic(5), [0, 0, 0], 2, 1),
            group: "mu_2^5/mu_2 x| C5",
            order: (n(80), "80"),
            neg_chi_quotient: (1, 10),
            neg_chi_cover: 8.into(),
            genus: n(5),
            curve: "Y[2,2,2,2,2]",
            note: None,
        },
        Entry {
            weights: [2, 5, 6],
            source: Polyhedral(Dihedral(5), [0, 1, 0], 3, 0),
            group: "mu_3^5/mu_3 x| D5",
            order: (n(810), "810"),
            neg_chi_quotient: (2, 15),
            neg_chi_cover: 108.into(),
            genus: n(55),
            curve: "Y[3,3,3,3,3]",
            note: None,
        },
        Entry {
            weights: [3, 3, 4],
            source: Polyhedral(Cyclic(3), [0, 0, 0], 4, 1),
            group: "mu_4^3/mu_4 x| C3",
            order: (n(48), "48"),
            neg_chi_quotient: (1, 12),
            neg_chi_cover: 4.into(),
            genus: n(3),
            curve: fermat4,
            note: None,
        },
        Entry {
            weights: [3, 3, 5],
            source: Polyhedral(Cyclic(3), [0, 0, 0], 5, 1),
            group: "mu_5^3/mu_5 x| C3",
            order: (n(75), "75"),
            neg_chi_quotient: (2, 15),
            neg_chi_cover: 10.into(),
            genus: n(6),
            curve: "F5: x^5+y^5+z^z",
            note: Some("the Fermat quintic is printed with z^z for z^5"),
        },
        Entry {
            weights: [3, 3, 6],
            source: Polyhedral(Cyclic(3), [0, 0, 0], 6, 1),
            group: "mu_6^3/mu_6 x| C3",
            order: (n(108), "108"),
            neg_chi_quotient: (1, 6),
            neg_chi_cover: 18.into(),
            genus: n(10),
            curve: "F6: x^6+y^6+z^6",
            note: None,
        },
        Entry {
            weights: [3, 4, 4],
            source: Polyhedral(Cyclic(4), [0, 0, 0], 3, 1),
            group: "mu_3^4/mu_3 x| C4",
            order: (n(108), "108"),
            neg_chi_quotient: (1, 6),
            neg_chi_cover: 18.into(),
            genus: n(10),
            curve: "Y[3,3,3,3]",
            note: None,
        },
        Entry {
            weights: [3, 4, 5],
            source: Polyhedral(Platonic(5), [1, 0, 0], 2, 0),
            group: "mu_2^30/mu_2 x| A5",
            order: (big_pow(2, 29) * n(60), "2^29*60"),
            neg_chi_quotient: (13, 60),
            neg_chi_cover: BigInt::from(big_pow(2, 29) * n(13)),
            genus: big_pow(2, 28) * n(13) + n(1),
            curve: "Y[2^[30]]",
            note: None,
        },
        Entry {
            weights: [4, 4, 4],
            source: Polyhedral(Cyclic(1), [0, 0, 0], 4, 3),
            group: "mu_4^3/mu_4",
            order: (n(16), "16"),
            neg_chi_quotient: (1, 4),
            neg_chi_cover: 4.into(),
            genus: n(3),
            curve: fermat4,
            note: None,
        },
    ];
    rows.shrink_to_fit();
    rows
}

fn build(entry: &Entry) -> ArnoldRow {
    let rec = match &entry.source {
        Source::Polyhedral(g, eps, a, r) => polyhedral_realize(*g, *eps, *a, *r),
        Source::Companion(w, g) => companion_quotient(w, *g, &entry.weights),
        Source::Permutations(name, gens) => permutation_realization(
            name,
            gens.iter().map(|g| parse_cycles(g).expect("catalog cycles")).collect(),
            &entry.weights,
            DEFAULT_CAP,
        ),
    }
    .expect("catalog realizations are valid")
    .with_label(entry.curve);

    let printed = PrintedRow {
        group: entry.group.to_string(),
        group_order: entry.order.0.clone(),
        group_order_text: entry.order.1.to_string(),
        neg_chi_quotient: ExactRational::new(entry.neg_chi_quotient.0, entry.neg_chi_quotient.1)
            .expect("nonzero denominator"),
        neg_chi_cover: entry.neg_chi_cover.clone(),
        genus: entry.genus.clone(),
        curve: entry.curve.to_string(),
    };

    let mut mismatches = Vec::new();
    if rec.quotient_weights != entry.weights {
        mismatches.push("weights".to_string());
    }
    if rec.group_order != printed.group_order {
        mismatches.push("|G|".to_string());
    }
    if -rec.chi_quotient.clone() != printed.neg_chi_quotient {
        mismatches.push("-chi_X".to_string());
    }
    if -rec.chi_cover.clone() != ExactRational::from(printed.neg_chi_cover.clone()) {
        mismatches.push("-chi_M".to_string());
    }
    if rec.genus_cover.as_ref() != Some(&printed.genus) {
        mismatches.push("g_M".to_string());
    }

    let mut flags = Vec::new();
    if !mismatches.is_empty() {
        flags.push(RowFlag::InconsistentPaperRow);
    }
    if entry.curve.contains("z^z") {
        flags.push(RowFlag::LabelTypo);
    }
    ArnoldRow {
        weights: entry.weights,
        printed,
        recomputed: rec,
        mismatches,
        flags,
        note: entry.note.map(str::to_string),
    }
}

/// The sixteen realizations of the fourteen triples, recomputed.
pub fn arnold_table() -> Vec<ArnoldRow> {
    entries().par_iter().map(build).collect()
}

pub fn audit(rows: &[ArnoldRow]) -> AuditSummary {
    let inconsistent: Vec<[u64; 3]> = rows
        .iter()
        .filter(|r| !r.consistent())
        .map(|r| r.weights)
        .collect();
    AuditSummary {
        rows: rows.len(),
        consistent: rows.len() - inconsistent.len(),
        inconsistent,
    }
}

/// Aligned plain-text rendering of the recomputed table.
pub fn render_table(rows: &[ArnoldRow]) -> String {
    let header = ["weights", "G", "|G|", "-chi_X", "-chi_M", "g_M", "curve", "flags"];
    let mut cells: Vec<Vec<String>> = vec![header.iter().map(|s| s.to_string()).collect()];
    for row in rows {
        let [a, b, c] = row.weights;
        let rec = &row.recomputed;
        let mut flags: Vec<String> = Vec::new();
        for f in &row.flags {
            match f {
                RowFlag::InconsistentPaperRow => {
                    let printed: Vec<String> = row
                        .mismatches
                        .iter()
                        .map(|col| format!("{col}={}", printed_value(&row.printed, col)))
                        .collect();
                    flags.push(format!("{f} (printed {})", printed.join(", ")));
                }
                RowFlag::LabelTypo => flags.push(f.to_string()),
            }
        }
        cells.push(vec![
            format!("<{a},{b},{c}>"),
            rec.group_description.to_string(),
            rec.group_order.to_string(),
            (-rec.chi_quotient.clone()).to_string(),
            (-rec.chi_cover.clone()).to_string(),
            rec.genus_cover.as_ref().map_or("-".to_string(), |g| g.to_string()),
            rec.curve_label.clone().unwrap_or_default(),
            flags.join("; "),
        ]);
    }
    let widths: Vec<usize> = (0..header.len())
        .map(|j| cells.iter().map(|r| r[j].chars().count()).max().unwrap_or(0))
        .collect();
    let mut out = String::new();
    for row in &cells {
        let line: Vec<String> = row
            .iter()
            .zip(&widths)
            .map(|(cell, w)| format!("{cell:<w$}"))
            .collect();
        out.push_str(line.join("  ").trim_end());
        out.push('\n');
    }
    out
}

fn printed_value(p: &PrintedRow, column: &str) -> String {
    match column {
        "|G|" => p.group_order_text.clone(),
        "-chi_X" => p.neg_chi_quotient.to_string(),
        "-chi_M" => p.neg_chi_cover.to_string(),
        "g_M" => p.genus.to_string(),
        _ => "?".to_string(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn row(rows: &[ArnoldRow], w: [u64; 3]) -> &ArnoldRow {
        rows.iter().find(|r| r.weights == w).unwrap()
    }

    #[test]
    fn sixteen_rows_fourteen_triples() {
        let rows = arnold_table();
        assert_eq!(rows.len(), 16);
        let mut triples: Vec<_> = rows.iter().map(|r| r.weights).collect();
        triples.dedup();
        assert_eq!(triples.len(), 14);
    }

    #[test]
    fn audit_flags_only_two_three_nine() {
        let rows = arnold_table();
        let summary = audit(&rows);
        assert_eq!(summary.inconsistent, vec![[2, 3, 9]]);
        assert_eq!(summary.consistent, 15);
        let bad = row(&rows, [2, 3, 9]);
        assert_eq!(bad.mismatches, vec!["|G|", "-chi_X"]);
        assert_eq!(bad.recomputed.group_order, n(324));
        assert_eq!(bad.recomputed.chi_quotient, ExactRational::new(-1, 18).unwrap());
        assert_eq!(bad.recomputed.genus_cover, Some(n(10)));
    }

    #[test]
    fn selected_rows() {
        let rows = arnold_table();
        let r = row(&rows, [2, 3, 8]);
        assert_eq!(r.recomputed.group_order, n(96));
        assert_eq!(r.recomputed.genus_cover, Some(n(3)));
        let r = row(&rows, [4, 4, 4]);
        assert_eq!(r.recomputed.group_order, n(16));
        assert_eq!(r.recomputed.chi_cover, ExactRational::from(-4));
        let r = row(&rows, [3, 4, 5]);
        assert_eq!(r.recomputed.group_order, big_pow(2, 29) * n(60));
        assert_eq!(r.recomputed.genus_cover, Some(big_pow(2, 28) * n(13) + n(1)));
        assert!(row(&rows, [3, 3, 5]).flags.contains(&RowFlag::LabelTypo));
    }

    #[test]
    fn text_rendering() {
        let text = render_table(&arnold_table());
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(lines.len(), 17);
        assert!(lines[0].starts_with("weights"));
        assert!(text.contains("INCONSISTENT_PAPER_ROW (printed |G|=396, -chi_X=2/3)"));
        assert!(text.contains("32212254720"));
        let g_col = lines[0].find("G ").unwrap();
        assert!(lines[1..].iter().all(|l| l.len() > g_col));
    }

    #[test]
    fn json_round_trip() {
        let rows = arnold_table();
        let json = serde_json::to_string(&rows).unwrap();
        let back: Vec<ArnoldRow> = serde_json::from_str(&json).unwrap();
        assert_eq!(back, rows);
        assert!(json.contains("\"group_order\":\"32212254720\""));
    }
}
