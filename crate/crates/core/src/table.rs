//! JSON coefficient tables shared by the command-line tool and the FFI layer.

use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::arith::{rational_str, Rational};
use crate::bqf::Bqf;
use crate::error::{Error, Result};
use crate::halfint::HalfIntegralForm;
use crate::jacobi::{JacobiCoeffs, INDEX};
use crate::siegel::SiegelForm;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct JacobiEntry {
    #[serde(rename = "D")]
    pub d: i64,
    #[serde(with = "rational_str")]
    pub value: Rational,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SiegelEntry {
    pub form: Bqf,
    #[serde(with = "rational_str")]
    pub value: Rational,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HalfEntry {
    pub n: u64,
    #[serde(with = "rational_str")]
    pub value: Rational,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "kebab-case", deny_unknown_fields)]
pub enum Table {
    Jacobi {
        weight: i64,
        index: i64,
        #[serde(rename = "prec_D")]
        prec_d: i64,
        entries: Vec<JacobiEntry>,
    },
    Siegel {
        weight: i64,
        level: u64,
        prec_disc: i64,
        entries: Vec<SiegelEntry>,
    },
    HalfIntegral {
        kappa: i64,
        level: u64,
        prec: u64,
        entries: Vec<HalfEntry>,
    },
}

impl Table {
    pub fn kind(&self) -> &'static str {
        match self {
            Table::Jacobi { .. } => "jacobi",
            Table::Siegel { .. } => "siegel",
            Table::HalfIntegral { .. } => "half-integral",
        }
    }

    pub fn from_jacobi(phi: &JacobiCoeffs) -> Self {
        Table::Jacobi {
            weight: phi.weight(),
            index: phi.index(),
            prec_d: phi.prec_d(),
            entries: phi
                .entries()
                .map(|(d, c)| JacobiEntry {
                    d,
                    value: c.clone(),
                })
                .collect(),
        }
    }

    pub fn from_siegel(f: &SiegelForm) -> Result<Self> {
        Ok(Table::Siegel {
            weight: f.weight(),
            level: f.level(),
            prec_disc: f.prec_disc(),
            entries: f
                .entries()?
                .into_iter()
                .map(|(form, value)| SiegelEntry { form, value })
                .collect(),
        })
    }

    pub fn from_half(h: &HalfIntegralForm) -> Self {
        Table::HalfIntegral {
            kappa: h.kappa(),
            level: h.level(),
            prec: h.prec(),
            entries: h
                .entries()
                .map(|(n, c)| HalfEntry {
                    n,
                    value: c.clone(),
                })
                .collect(),
        }
    }

    pub fn to_jacobi(&self) -> Result<JacobiCoeffs> {
        match self {
            Table::Jacobi {
                weight,
                index,
                prec_d,
                entries,
            } => {
                if *index != INDEX {
                    return Err(Error::invalid(format!("unsupported Jacobi index {index}")));
                }
                JacobiCoeffs::from_entries(
                    *weight,
                    *prec_d,
                    entries.iter().map(|e| (e.d, e.value.clone())),
                )
            }
            other => Err(self.wrong_kind("jacobi", other)),
        }
    }

    pub fn to_siegel(&self) -> Result<SiegelForm> {
        match self {
            Table::Siegel {
                weight,
                level,
                prec_disc,
                entries,
            } => SiegelForm::from_table(
                *weight,
                *level,
                *prec_disc,
                entries.iter().map(|e| (e.form, e.value.clone())),
            ),
            other => Err(self.wrong_kind("siegel", other)),
        }
    }

    pub fn to_half(&self) -> Result<HalfIntegralForm> {
        match self {
            Table::HalfIntegral {
                kappa,
                level,
                prec,
                entries,
            } => HalfIntegralForm::new(
                *kappa,
                *level,
                *prec,
                entries.iter().map(|e| (e.n, e.value.clone())),
            ),
            other => Err(self.wrong_kind("half-integral", other)),
        }
    }

    fn wrong_kind(&self, wanted: &str, got: &Table) -> Error {
        Error::invalid(format!("expected a {wanted} table, got {}", got.kind()))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("tables always serialize")
    }

    pub fn from_json(s: &str) -> Result<Self> {
        serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
        Self::from_json(&text)
    }

    pub fn save(&self, path: &Path) -> Result<()> {
        let mut text = self.to_json();
        text.push('\n');
        std::fs::write(path, text).map_err(|e| Error::Io(format!("{}: {e}", path.display())))
    }
}
