use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::identities::*;
use super::report::{IdentityReport, Tolerance};
use crate::cpe::{derive_generator, make_loss, LossFamily};
use crate::divergence::Family;
use crate::error::{Error, Result};
use crate::prob::rng::derive_seed;
use crate::prob::FiniteDistribution;

pub const SUPPORTS: [usize; 3] = [2, 8, 64];

/// Loss members of the main identity suite.
pub fn theorem1_members() -> Vec<LossFamily> {
    let mut v = vec![LossFamily::Vanilla];
    v.extend([0.6, 1.0, 2.0, 5.0, 10.0, 20.0].map(|alpha| LossFamily::Alpha { alpha }));
    v.extend([0.25, 1.0, 2.0, 7.5, 15.0].map(|k| LossFamily::Slk { k }));
    v
}

pub const LEMMA3_ALPHAS: [f64; 5] = [0.6, 1.0, 2.0, 5.0, 20.0];
pub const LEMMA3_REJECTED_ALPHA: f64 = 0.4;
pub const LEMMA4_KS: [f64; 5] = [0.25, 1.0, 2.0, 7.5, 15.0];
pub const PROP1_ALPHAS: [f64; 3] = [0.5, 2.0, 5.0];
pub const PROP3_KS: [f64; 3] = [2.0, 3.0, 4.5];
pub const RENYI_ALPHAS: [f64; 3] = [0.5, 2.0, 5.0];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Suite {
    All,
    Theorem1,
    Lemmas,
    Props,
    DivergenceZoo,
}

impl Suite {
    pub const NAMES: [&'static str; 5] = ["all", "theorem1", "lemmas", "props", "divergence-zoo"];
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "all" => Suite::All,
            "theorem1" => Suite::Theorem1,
            "lemmas" => Suite::Lemmas,
            "props" => Suite::Props,
            "divergence-zoo" => Suite::DivergenceZoo,
            other => {
                return Err(Error::Parse(format!(
                    "unknown suite {other:?}; expected one of {}",
                    Suite::NAMES.join(", ")
                )))
            }
        })
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let i = [Suite::All, Suite::Theorem1, Suite::Lemmas, Suite::Props, Suite::DivergenceZoo]
            .iter()
            .position(|s| s == self)
            .expect("listed");
        f.write_str(Suite::NAMES[i])
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SuiteConfig {
    /// Random `(p, q)` pairs per (member, support).
    pub seeds: u64,
    pub base_seed: u64,
    /// Replaces every check's own relative tolerance when set.
    pub tolerance: Option<f64>,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        Self {
            seeds: 20,
            base_seed: 0,
            tolerance: None,
        }
    }
}

/// One line of the JSON-lines verification report.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct IdentityRecord {
    pub check: String,
    pub family: String,
    pub parameter: Option<f64>,
    pub support: usize,
    pub seed: u64,
    pub lhs: Option<f64>,
    pub rhs: Option<f64>,
    pub residual: Option<f64>,
    pub pass: bool,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub note: Option<String>,
}

fn finite(x: f64) -> Option<f64> {
    x.is_finite().then_some(x)
}

struct Runner {
    config: SuiteConfig,
    records: Vec<IdentityRecord>,
}

impl Runner {
    fn pair(&self, support: usize, seed: u64) -> Result<(FiniteDistribution, FiniteDistribution)> {
        let s = derive_seed(self.config.base_seed, (support as u64) << 32 | seed);
        Ok((
            FiniteDistribution::random(support, derive_seed(s, 0))?,
            FiniteDistribution::random(support, derive_seed(s, 1))?,
        ))
    }

    fn retol(&self, mut r: IdentityReport) -> IdentityReport {
        if let Some(t) = self.config.tolerance {
            r = IdentityReport::compare(r.lhs, r.rhs, Tolerance::relative(t));
        }
        r
    }

    #[allow(clippy::too_many_arguments)]
    fn push(&mut self, check: &str, family: &str, parameter: Option<f64>, support: usize, seed: u64, r: IdentityReport) {
        let r = self.retol(r);
        self.records.push(IdentityRecord {
            check: check.into(),
            family: family.into(),
            parameter,
            support,
            seed,
            lhs: finite(r.lhs),
            rhs: finite(r.rhs),
            residual: Some(r.residual()).filter(|x| !x.is_nan()),
            pass: r.pass,
            note: None,
        });
    }

    /// Runs `f` on every (support, seed) pair.
    fn each_pair(
        &mut self,
        check: &str,
        family: &str,
        parameter: Option<f64>,
        mut f: impl FnMut(&FiniteDistribution, &FiniteDistribution) -> Result<IdentityReport>,
    ) -> Result<()> {
        for support in SUPPORTS {
            for seed in 0..self.config.seeds {
                let (p, q) = self.pair(support, seed)?;
                let r = f(&p, &q)?;
                self.push(check, family, parameter, support, seed, r);
            }
        }
        Ok(())
    }

    fn theorem1(&mut self) -> Result<()> {
        for fam in theorem1_members() {
            let loss = make_loss(fam)?;
            let derived = derive_generator(&loss, None)?;
            self.each_pair("theorem1", fam.name(), fam.parameter(), |p, q| {
                theorem1_with(&loss, &derived, p, q, Tolerance::standard())
            })?;
        }
        Ok(())
    }

    fn lemmas(&mut self) -> Result<()> {
        self.each_pair("lemma2", "vanilla", None, lemma2_identity)?;
        for alpha in LEMMA3_ALPHAS {
            self.each_pair("lemma3", "alpha", Some(alpha), |p, q| lemma3_divergence_identity(alpha, p, q))?;
        }
        let (p, q) = self.pair(8, 0)?;
        let rejected = lemma3_divergence_identity(LEMMA3_REJECTED_ALPHA, &p, &q);
        let cpe_rejected = derive_generator(&make_loss(LossFamily::Alpha { alpha: LEMMA3_REJECTED_ALPHA })?, None);
        self.records.push(IdentityRecord {
            check: "lemma3_rejects".into(),
            family: "alpha".into(),
            parameter: Some(LEMMA3_REJECTED_ALPHA),
            support: 8,
            seed: 0,
            lhs: None,
            rhs: None,
            residual: None,
            pass: rejected.is_err() && cpe_rejected.is_err(),
            note: Some(match (&rejected, &cpe_rejected) {
                (Err(a), Err(b)) => format!("{a}; {b}"),
                _ => "accepted an alpha outside the convex range".into(),
            }),
        });
        for k in LEMMA4_KS {
            self.each_pair("lemma4", "slk", Some(k), |p, q| lemma4_identity(k, p, q))?;
            self.each_pair("lemma4_corrected", "slk", Some(k), |p, q| lemma4_corrected_identity(k, p, q))?;
        }
        Ok(())
    }

    fn props(&mut self) -> Result<()> {
        for alpha in PROP1_ALPHAS {
            self.each_pair("prop1", "alpha", Some(alpha), |p, q| prop1_arimoto_identity(alpha, p, q))?;
        }
        for support in SUPPORTS {
            for seed in 0..self.config.seeds {
                let (p, q) = self.pair(support, seed)?;
                let v = prop1_alpha_one_check(&p, &q)?;
                let matched = if v.double_jsd_form.pass {
                    v.double_jsd_form
                } else {
                    v.single_jsd_form
                };
                self.records.push(IdentityRecord {
                    check: "prop1_alpha1".into(),
                    family: "alpha".into(),
                    parameter: Some(1.0),
                    support,
                    seed,
                    lhs: finite(v.value),
                    rhs: finite(matched.rhs),
                    residual: Some(matched.residual()),
                    pass: v.double_jsd_form.pass != v.single_jsd_form.pass,
                    note: Some(v.summary().into()),
                });
            }
        }
        for k in PROP3_KS {
            self.each_pair("prop3", "lsgan", Some(k), |p, q| prop3_vajda_identity(k, LkLabels::LSGAN, p, q))?;
        }
        Ok(())
    }

    fn zoo(&mut self) -> Result<()> {
        for fam in Family::zoo() {
            let name = fam.to_string();
            self.each_pair("symmetrization", &name, None, |p, q| symmetrization_identity(fam, p, q))?;
            self.each_pair("formula", &name, None, |p, q| formula_identity(fam, p, q))?;
        }
        for alpha in RENYI_ALPHAS {
            self.each_pair("renyi_hellinger", "renyi", Some(alpha), |p, q| {
                renyi_hellinger_identity(alpha, p, q)
            })?;
        }
        Ok(())
    }
}

/// Runs `suite` and returns one record per identity evaluation.
pub fn run_suite(suite: Suite, config: SuiteConfig) -> Result<Vec<IdentityRecord>> {
    if let Some(t) = config.tolerance {
        if !(t >= 0.0) {
            return Err(Error::InvalidParameter(format!("tolerance must be >= 0, got {t}")));
        }
    }
    let mut runner = Runner {
        config,
        records: Vec::new(),
    };
    match suite {
        Suite::Theorem1 => runner.theorem1()?,
        Suite::Lemmas => runner.lemmas()?,
        Suite::Props => runner.props()?,
        Suite::DivergenceZoo => runner.zoo()?,
        Suite::All => {
            runner.theorem1()?;
            runner.lemmas()?;
            runner.props()?;
            runner.zoo()?;
        }
    }
    Ok(runner.records)
}
