//! Report assembly and rendering.
//!
//! Every analysis emits one `Report`: a JSON-serializable record embedding
//! the tool version and all caps in effect, so certificates are
//! reproducible, plus the verdicts, witnesses (characters as rational
//! vectors), series and split data (subspace bases), and diagnostics. The
//! text renderer walks the same structure.

use serde::{Deserialize, Serialize};

use soldyn_core::autdyn::{AutoVerdict, SplitReport};
use soldyn_core::ergfind::ErgodicSearchResult;
use soldyn_core::groupdyn::{
    GenSet, GroupCertificate, GroupVerdict, LayerCertificate, SeriesReport, Word,
};
use soldyn_core::simulate::OrbitRun;
use soldyn_core::subspace::Subspace;

use crate::input::{matrix_strings, vector_strings};

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct Caps {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub orbit_cap: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub word_cap: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub power_cap: Option<u64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct WordDto {
    pub letters: Vec<i64>,
    pub display: String,
    pub matrix: Vec<Vec<String>>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SubspaceDto {
    pub dim: usize,
    pub basis: Vec<Vec<String>>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct WitnessDto {
    pub character: Vec<String>,
    pub orbit_size: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AutoVerdictDto {
    pub ergodic: bool,
    pub distal: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub root_of_unity_witness: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub unipotence_exponent: Option<u64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SplitDto {
    pub chain: Vec<SubspaceDto>,
    pub distal_part_dim: usize,
    pub ergodic_part_dim: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum LayerDto {
    FiniteAction { order: usize },
    Stalled { quotient_dim: usize },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SeriesDto {
    pub distal: bool,
    pub chain: Vec<SubspaceDto>,
    pub layers: Vec<LayerDto>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum CertificateDto {
    FiniteOrbit {
        character: Vec<String>,
        orbit_size: usize,
    },
    VirtualUnipotence {
        exponent: u64,
    },
    ErgodicQuotient {
        dim: usize,
    },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GroupVerdictDto {
    pub ergodic: bool,
    pub distal: bool,
    pub w: SubspaceDto,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StageDto {
    pub subspace: SubspaceDto,
    pub alpha: WordDto,
    pub level: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StatsDto {
    pub iterations: u64,
    pub min_dist_to_zero: f64,
    pub discrepancy: f64,
    pub start: Vec<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub tool: String,
    pub version: String,
    pub command: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub input_file: Option<String>,
    pub caps: Caps,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub auto_verdict: Option<AutoVerdictDto>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub group_verdict: Option<GroupVerdictDto>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub split: Option<SplitDto>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub series: Option<SeriesDto>,
    #[serde(skip_serializing_if = "Vec::is_empty", default)]
    pub witnesses: Vec<WitnessDto>,
    #[serde(skip_serializing_if = "Vec::is_empty", default)]
    pub certificates: Vec<CertificateDto>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub found: Option<WordDto>,
    #[serde(skip_serializing_if = "Vec::is_empty", default)]
    pub filtration: Vec<StageDto>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub stats: Option<StatsDto>,
    #[serde(skip_serializing_if = "Vec::is_empty", default)]
    pub diagnostics: Vec<String>,
}

impl Report {
    pub fn new(command: &str) -> Self {
        Report {
            tool: "soldyn".to_string(),
            version: env!("CARGO_PKG_VERSION").to_string(),
            command: command.to_string(),
            input_file: None,
            caps: Caps::default(),
            auto_verdict: None,
            group_verdict: None,
            split: None,
            series: None,
            witnesses: Vec::new(),
            certificates: Vec::new(),
            found: None,
            filtration: Vec::new(),
            stats: None,
            diagnostics: Vec::new(),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn render_text(&self) -> String {
        let mut out = String::new();
        let mut line = |s: String| {
            out.push_str(&s);
            out.push('\n');
        };
        line(format!("soldyn {} — {}", self.version, self.command));
        if let Some(f) = &self.input_file {
            line(format!("input: {f}"));
        }
        if let Some(v) = &self.auto_verdict {
            line(format!("ergodic: {}", v.ergodic));
            line(format!("distal: {}", v.distal));
            if let Some(n) = v.root_of_unity_witness {
                line(format!("root-of-unity eigenvalue of order: {n}"));
            }
            if let Some(n) = v.unipotence_exponent {
                line(format!("unipotence exponent: {n}"));
            }
        }
        if let Some(v) = &self.group_verdict {
            line(format!("ergodic: {}", v.ergodic));
            line(format!("distal: {}", v.distal));
            line(format!("finite-orbit subspace W: dim {}", v.w.dim));
            for b in &v.w.basis {
                line(format!("  W basis: ({})", b.join(", ")));
            }
        }
        if let Some(s) = &self.split {
            let dims: Vec<String> = s.chain.iter().map(|c| c.dim.to_string()).collect();
            line(format!("split chain dims: [{}]", dims.join(", ")));
            line(format!("distal part dim: {}", s.distal_part_dim));
            line(format!("ergodic part dim: {}", s.ergodic_part_dim));
        }
        if let Some(s) = &self.series {
            let dims: Vec<String> = s.chain.iter().map(|c| c.dim.to_string()).collect();
            line(format!("series chain dims: [{}]", dims.join(", ")));
            for (i, l) in s.layers.iter().enumerate() {
                match l {
                    LayerDto::FiniteAction { order } => line(format!(
                        "  layer {}: finite action of order {}",
                        i + 1,
                        order
                    )),
                    LayerDto::Stalled { quotient_dim } => line(format!(
                        "  layer {}: stalled on an ergodic quotient of dim {}",
                        i + 1,
                        quotient_dim
                    )),
                }
            }
            line(format!("series distal: {}", s.distal));
        }
        for w in &self.witnesses {
            line(format!(
                "finite-orbit character: ({}) with orbit size {}",
                w.character.join(", "),
                w.orbit_size
            ));
        }
        for c in &self.certificates {
            match c {
                CertificateDto::FiniteOrbit {
                    character,
                    orbit_size,
                } => line(format!(
                    "certificate: finite orbit of ({}) with size {}",
                    character.join(", "),
                    orbit_size
                )),
                CertificateDto::VirtualUnipotence { exponent } => line(format!(
                    "certificate: virtually unipotent with exponent {exponent}"
                )),
                CertificateDto::ErgodicQuotient { dim } => {
                    line(format!("certificate: ergodic quotient of dim {dim}"))
                }
            }
        }
        if let Some(w) = &self.found {
            line(format!("ergodic element: {}", w.display));
            for row in &w.matrix {
                line(format!("  [{}]", row.join(", ")));
            }
        }
        for stage in &self.filtration {
            line(format!(
                "filtration stage: subspace dim {}, element {}, level {}",
                stage.subspace.dim, stage.alpha.display, stage.level
            ));
        }
        if let Some(s) = &self.stats {
            line(format!("iterations: {}", s.iterations));
            line(format!(
                "start: [{}]",
                s.start
                    .iter()
                    .map(f64::to_string)
                    .collect::<Vec<_>>()
                    .join(", ")
            ));
            line(format!("min distance to zero: {}", s.min_dist_to_zero));
            line(format!("discrepancy: {}", s.discrepancy));
        }
        for d in &self.diagnostics {
            line(format!("note: {d}"));
        }
        out
    }
}

pub fn word_dto(w: &Word, g: Option<&GenSet>) -> WordDto {
    WordDto {
        letters: w.letters().to_vec(),
        display: w.display(g),
        matrix: matrix_strings(w.matrix()),
    }
}

pub fn subspace_dto(s: &Subspace) -> SubspaceDto {
    SubspaceDto {
        dim: s.dim(),
        basis: s.basis().iter().map(vector_strings).collect(),
    }
}

pub fn auto_verdict_dto(v: &AutoVerdict) -> AutoVerdictDto {
    AutoVerdictDto {
        ergodic: v.ergodic,
        distal: v.distal,
        root_of_unity_witness: v.root_of_unity_witness,
        unipotence_exponent: v.unipotence_exponent,
    }
}

pub fn split_dto(s: &SplitReport) -> SplitDto {
    SplitDto {
        chain: s.chain.iter().map(subspace_dto).collect(),
        distal_part_dim: s.distal_part().dim(),
        ergodic_part_dim: s.ergodic_part_dim,
    }
}

pub fn series_dto(s: &SeriesReport) -> SeriesDto {
    SeriesDto {
        distal: s.distal,
        chain: s.chain.iter().map(subspace_dto).collect(),
        layers: s
            .layers
            .iter()
            .map(|l| match l {
                LayerCertificate::FiniteAction { order, .. } => {
                    LayerDto::FiniteAction { order: *order }
                }
                LayerCertificate::Stalled { quotient_gens } => LayerDto::Stalled {
                    quotient_dim: quotient_gens.first().map_or(0, |m| m.dim()),
                },
            })
            .collect(),
    }
}

pub fn certificate_dtos(v: &GroupVerdict) -> Vec<CertificateDto> {
    v.certificates
        .iter()
        .map(|c| match c {
            GroupCertificate::FiniteOrbit(w) => CertificateDto::FiniteOrbit {
                character: vector_strings(&w.chi),
                orbit_size: w.orbit.len(),
            },
            GroupCertificate::VirtualUnipotence { exponent } => CertificateDto::VirtualUnipotence {
                exponent: *exponent,
            },
            GroupCertificate::ErgodicQuotient { dim } => {
                CertificateDto::ErgodicQuotient { dim: *dim }
            }
        })
        .collect()
}

pub fn group_verdict_dto(v: &GroupVerdict) -> GroupVerdictDto {
    GroupVerdictDto {
        ergodic: v.ergodic,
        distal: v.distal,
        w: subspace_dto(&v.w),
    }
}

pub fn stage_dtos(result: &ErgodicSearchResult, g: &GenSet) -> Vec<StageDto> {
    result
        .filtration
        .iter()
        .map(|s| StageDto {
            subspace: subspace_dto(&s.subspace),
            alpha: word_dto(&s.alpha, Some(g)),
            level: s.level,
        })
        .collect()
}

pub fn stats_dto(run: &OrbitRun) -> StatsDto {
    StatsDto {
        iterations: run.stats.iterations,
        min_dist_to_zero: run.stats.min_dist_to_zero,
        discrepancy: run.stats.discrepancy,
        start: run.start.clone(),
    }
}
