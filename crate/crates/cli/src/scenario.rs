//! Scenario files: a JSON description of a group, a multiplier and the task inputs.

use serde::{Deserialize, Serialize};
use weylkit::multiplier::Pairing;
use weylkit::{Bicharacter, Error, FinAbGroup, GroupElement, Multiplier, Phase, Result, SplittingData, Subgroup};

/// Tasks a scenario can drive; each has a matching subcommand.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Task {
    Verify,
    Isotropy,
    Model,
    Vacuum,
    Fermion,
    Padic,
    Svn,
}

impl Task {
    pub fn name(self) -> &'static str {
        match self {
            Task::Verify => "verify",
            Task::Isotropy => "isotropy",
            Task::Model => "model",
            Task::Vacuum => "vacuum",
            Task::Fermion => "fermion",
            Task::Padic => "padic",
            Task::Svn => "svn",
        }
    }
}

/// How the multiplier is given.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", deny_unknown_fields)]
pub enum MultiplierSpec {
    /// Matrix `B_ij = m(e_i, e_j)` of a bicharacter.
    Bicharacter(Vec<Vec<Phase>>),
    /// Full table in index order, entry `x + |G|·y` holding `m(x, y)`.
    Table(Vec<Phase>),
    /// `m((a,b),(a',b')) = ⟨a',b⟩` for `G = A × B`, `A` the first `left_rank` factors.
    WeylProduct { left_rank: usize, pairing: Vec<Vec<Phase>> },
    /// `(x₁·y₂ − x₂·y₁)/n` on `(Z/n)^{2d}`.
    Symplectic { n: i64, d: usize },
}

/// One value of a splitting `c : A → Q/Z`.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SplittingEntry {
    pub element: Vec<i64>,
    pub value: Phase,
}

#[derive(Clone, Copy, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct WindowSpec {
    pub p: u64,
    pub k: u32,
    pub d: usize,
}

/// A parsed scenario file.
#[derive(Clone, Debug, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Scenario {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub task: Option<Task>,
    /// Moduli of `G`; implied by `symplectic` and `window` when absent.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub group: Option<Vec<i64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub multiplier: Option<MultiplierSpec>,
    /// Generators of the subgroup the task works with.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub subgroup: Option<Vec<Vec<i64>>>,
    /// Generators of two subgroups for `svn`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub subgroups: Option<Vec<Vec<Vec<i64>>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub splitting: Option<Vec<SplittingEntry>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub window: Option<WindowSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tolerance: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
}

impl Scenario {
    /// Parses JSON, reporting the line and column of syntax and schema errors.
    pub fn parse(text: &str, origin: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Input(format!("{origin}:{}:{}: {e}", e.line(), e.column())))
    }

    pub fn group(&self) -> Result<FinAbGroup> {
        match (&self.group, &self.multiplier) {
            (Some(moduli), _) => FinAbGroup::new(moduli.clone()),
            (None, Some(MultiplierSpec::Symplectic { n, d })) => Ok(FinAbGroup::power(*n, 2 * d)),
            _ => Err(Error::Input("scenario needs a group".into())),
        }
    }

    pub fn multiplier(&self) -> Result<Multiplier> {
        let g = self.group()?;
        let spec = self.multiplier.as_ref().ok_or_else(|| Error::Input("scenario needs a multiplier".into()))?;
        match spec {
            MultiplierSpec::Bicharacter(b) => Multiplier::bicharacter(Bicharacter::new(&g, b.clone())?),
            MultiplierSpec::Table(values) => Multiplier::from_table(&g, values.clone()),
            MultiplierSpec::WeylProduct { .. } => Ok(Multiplier::weyl_product(self.pairing()?.expect("weyl product"))),
            MultiplierSpec::Symplectic { n, d } => {
                if g != FinAbGroup::power(*n, 2 * d) {
                    return Err(Error::Input(format!("symplectic form on (Z/{n})^{} does not live on {g}", 2 * d)));
                }
                Multiplier::bicharacter(Bicharacter::standard_symplectic(*n, *d))
            }
        }
    }

    /// The pairing of a Weyl-product multiplier, if that is how it was given.
    pub fn pairing(&self) -> Result<Option<Pairing>> {
        let Some(MultiplierSpec::WeylProduct { left_rank, pairing }) = &self.multiplier else {
            return Ok(None);
        };
        let g = self.group()?;
        if *left_rank > g.rank() {
            return Err(Error::Input(format!("left rank {left_rank} exceeds rank {}", g.rank())));
        }
        let (a, b) = g.moduli().split_at(*left_rank);
        let a = FinAbGroup::new(a.to_vec())?;
        let b = FinAbGroup::new(b.to_vec())?;
        Ok(Some(Bicharacter::pairing(&a, &b, pairing.clone())?))
    }

    pub fn subgroup(&self, g: &FinAbGroup) -> Result<Option<Subgroup>> {
        self.subgroup.as_ref().map(|gens| Subgroup::from_coords(g, gens)).transpose()
    }

    pub fn subgroups(&self, g: &FinAbGroup) -> Result<Vec<Subgroup>> {
        self.subgroups.iter().flatten().map(|gens| Subgroup::from_coords(g, gens)).collect()
    }

    pub fn splitting(&self, a: &Subgroup) -> Result<Option<SplittingData>> {
        let Some(entries) = &self.splitting else {
            return Ok(None);
        };
        let g = a.ambient();
        let pairs = entries
            .iter()
            .map(|e| Ok((g.element(&e.element)?, e.value.clone())))
            .collect::<Result<Vec<(GroupElement, Phase)>>>()?;
        SplittingData::from_pairs(a, &pairs).map(Some)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_every_multiplier_form() {
        let s = Scenario::parse(r#"{"group":[2],"multiplier":{"table":["0","0","0","1/2"]}}"#, "t").unwrap();
        assert!(s.multiplier().unwrap().is_cocycle());
        let s = Scenario::parse(r#"{"group":[3,3],"multiplier":{"bicharacter":[["0","1/3"],["-1/3","0"]]}}"#, "t").unwrap();
        assert!(s.multiplier().unwrap().as_bicharacter().unwrap().is_alternating());
        let s = Scenario::parse(r#"{"group":[2,2],"multiplier":{"weyl_product":{"left_rank":1,"pairing":[["1/2"]]}}}"#, "t").unwrap();
        assert!(s.pairing().unwrap().is_some());
        let s = Scenario::parse(r#"{"multiplier":{"symplectic":{"n":9,"d":1}},"subgroup":[[3,0],[0,3]]}"#, "t").unwrap();
        assert_eq!(s.group().unwrap().moduli(), &[9, 9]);
        assert_eq!(s.subgroup(&s.group().unwrap()).unwrap().unwrap().order(), 9);
    }

    #[test]
    fn rejects_unknown_fields_with_position() {
        let err = Scenario::parse("{\n  \"group\": [2],\n  \"colour\": 1\n}", "s.json").unwrap_err();
        let msg = err.to_string();
        assert!(msg.contains("s.json:3:"), "{msg}");
        assert!(msg.contains("colour"));
        let err = Scenario::parse("{\"group\": [2,", "s.json").unwrap_err();
        assert!(err.to_string().contains("s.json:1:"));
    }

    #[test]
    fn mismatched_symplectic_group_is_input_error() {
        let s = Scenario::parse(r#"{"group":[3,3],"multiplier":{"symplectic":{"n":9,"d":1}}}"#, "t").unwrap();
        assert!(matches!(s.multiplier(), Err(Error::Input(_))));
    }
}
