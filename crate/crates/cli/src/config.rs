use std::collections::BTreeSet;
use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;

use serde::Serialize;
use skewbrace::check::DEFAULT_SEED;
use skewbrace::group::{Group, GroupMap};
use skewbrace::morphisms::{parse_endomorphism_table, parse_generator_form};
use skewbrace::zoo::{self, build_with_cap, paper_example, ZooSpec, DEFAULT_ORDER_CAP};
use skewbrace::{CheckConfig, Sign};

/// Anything that stops a run before a verdict is reached. Maps to exit code 2.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InputError(pub String);

impl fmt::Display for InputError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for InputError {}

impl From<skewbrace::Error> for InputError {
    fn from(e: skewbrace::Error) -> Self {
        InputError(e.to_string())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GroupSource {
    /// A Cayley table file.
    File(PathBuf),
    Zoo(ZooSpec),
    Paper(String),
}

impl FromStr for GroupSource {
    type Err = InputError;

    fn from_str(s: &str) -> Result<Self, InputError> {
        if let Some(spec) = s.strip_prefix("zoo:") {
            return spec.parse().map(GroupSource::Zoo).map_err(InputError::from);
        }
        if let Some(name) = s.strip_prefix("paper:") {
            if !zoo::PAPER_EXAMPLES.contains(&name) {
                return Err(InputError(format!("unknown example '{name}'; try `zoo list`")));
            }
            return Ok(GroupSource::Paper(name.to_string()));
        }
        Ok(GroupSource::File(PathBuf::from(s.strip_prefix("file:").unwrap_or(s))))
    }
}

impl fmt::Display for GroupSource {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupSource::File(p) => write!(f, "file:{}", p.display()),
            GroupSource::Zoo(spec) => write!(f, "zoo:{spec}"),
            GroupSource::Paper(name) => write!(f, "paper:{name}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum EndoSource {
    /// A file listing `ψ(0), ψ(1), ...` separated by whitespace.
    File(PathBuf),
    /// `gen:g->x,h->y`, extended from generator images.
    Generators(String),
    Identity,
    Zero,
    /// Every endomorphism of the group.
    Enumerate,
}

impl FromStr for EndoSource {
    type Err = InputError;

    fn from_str(s: &str) -> Result<Self, InputError> {
        Ok(match s {
            "identity" | "id" => EndoSource::Identity,
            "zero" | "trivial" => EndoSource::Zero,
            "enumerate" | "all" => EndoSource::Enumerate,
            _ => match s.strip_prefix("gen:") {
                Some(form) => EndoSource::Generators(form.to_string()),
                None => EndoSource::File(PathBuf::from(s.strip_prefix("file:").unwrap_or(s))),
            },
        })
    }
}

impl fmt::Display for EndoSource {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            EndoSource::File(p) => write!(f, "file:{}", p.display()),
            EndoSource::Generators(form) => write!(f, "gen:{form}"),
            EndoSource::Identity => f.write_str("identity"),
            EndoSource::Zero => f.write_str("zero"),
            EndoSource::Enumerate => f.write_str("enumerate"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Check {
    Classify,
    Oracles,
    Brace,
    Ybe,
    Hg,
    Fitting,
    Equivariance,
}

impl Check {
    pub const ALL: [Check; 7] =
        [Check::Classify, Check::Oracles, Check::Brace, Check::Ybe, Check::Hg, Check::Fitting, Check::Equivariance];

    pub fn name(self) -> &'static str {
        match self {
            Check::Classify => "classify",
            Check::Oracles => "oracles",
            Check::Brace => "brace",
            Check::Ybe => "ybe",
            Check::Hg => "hg",
            Check::Fitting => "fitting",
            Check::Equivariance => "equivariance",
        }
    }
}

impl FromStr for Check {
    type Err = InputError;

    fn from_str(s: &str) -> Result<Self, InputError> {
        Check::ALL.into_iter().find(|c| c.name() == s).ok_or_else(|| InputError(format!("unknown check '{s}'")))
    }
}

/// Parses `all` or a comma-separated list of check names.
pub fn parse_checks(s: &str) -> Result<BTreeSet<Check>, InputError> {
    if s.trim() == "all" {
        return Ok(Check::ALL.into_iter().collect());
    }
    s.split(',').map(|c| c.trim().parse()).collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Format {
    #[default]
    Text,
    Json,
}

impl FromStr for Format {
    type Err = InputError;

    fn from_str(s: &str) -> Result<Self, InputError> {
        match s {
            "text" => Ok(Format::Text),
            "json" => Ok(Format::Json),
            _ => Err(InputError(format!("unknown format '{s}'"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RunConfig {
    pub group: GroupSource,
    /// Defaults to the example's own `ψ` for `paper:` groups and the identity
    /// otherwise.
    pub endo: Option<EndoSource>,
    /// Defaults to the example's sign for `paper:` groups and `-1` otherwise.
    /// Enumeration runs both signs unless one is given.
    pub epsilon: Option<Sign>,
    pub checks: BTreeSet<Check>,
    /// Overrides the exhaustive cap of every check when set.
    pub exhaustive_cap: Option<usize>,
    /// Overrides the sample count of every check when set.
    pub samples: Option<u64>,
    pub seed: u64,
    pub format: Format,
}

impl RunConfig {
    pub fn new(group: GroupSource) -> Self {
        RunConfig {
            group,
            endo: None,
            epsilon: None,
            checks: Check::ALL.into_iter().collect(),
            exhaustive_cap: None,
            samples: None,
            seed: DEFAULT_SEED,
            format: Format::Text,
        }
    }

    pub fn settings(&self) -> Settings {
        let adjust = |base: CheckConfig| CheckConfig {
            exhaustive_cap: self.exhaustive_cap.unwrap_or(base.exhaustive_cap),
            samples: self.samples.unwrap_or(base.samples),
            seed: self.seed,
        };
        Settings { oracle: adjust(CheckConfig::oracle_default()), ybe: adjust(CheckConfig::ybe_default()) }
    }
}

/// Sampling parameters for the axiom and oracle checks and for the braid checks.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Settings {
    pub oracle: CheckConfig,
    pub ybe: CheckConfig,
}

impl Default for Settings {
    fn default() -> Self {
        Settings { oracle: CheckConfig::oracle_default(), ybe: CheckConfig::ybe_default() }
    }
}

/// A group together with the defaults it brings along.
pub struct LoadedGroup {
    pub group: Group,
    pub default_psi: Option<GroupMap>,
    pub default_epsilon: Option<Sign>,
}

pub fn load_group(source: &GroupSource) -> Result<LoadedGroup, InputError> {
    match source {
        GroupSource::File(path) => {
            let text = std::fs::read_to_string(path)
                .map_err(|e| InputError(format!("cannot read {}: {e}", path.display())))?;
            let name = path.file_stem().map_or_else(|| "G".to_string(), |s| s.to_string_lossy().into_owned());
            let group = Group::parse_cayley(name, &text).map_err(|e| InputError(format!("{}: {e}", path.display())))?;
            Ok(LoadedGroup { group, default_psi: None, default_epsilon: None })
        }
        GroupSource::Zoo(spec) => Ok(LoadedGroup {
            group: build_with_cap(spec, DEFAULT_ORDER_CAP)?,
            default_psi: None,
            default_epsilon: None,
        }),
        GroupSource::Paper(name) => {
            let ex = paper_example(name)?;
            Ok(LoadedGroup { group: ex.group, default_psi: Some(ex.psi), default_epsilon: Some(ex.epsilon) })
        }
    }
}

/// Resolves a single endomorphism; `Enumerate` is handled by the caller.
pub fn load_endo(group: &Group, source: &EndoSource) -> Result<GroupMap, InputError> {
    match source {
        EndoSource::File(path) => {
            let text = std::fs::read_to_string(path)
                .map_err(|e| InputError(format!("cannot read {}: {e}", path.display())))?;
            parse_endomorphism_table(group, &text).map_err(|e| InputError(format!("{}: {e}", path.display())))
        }
        EndoSource::Generators(form) => Ok(parse_generator_form(group, form)?),
        EndoSource::Identity => Ok(GroupMap::identity(group)),
        EndoSource::Zero => Ok(GroupMap::zero(group)),
        EndoSource::Enumerate => Err(InputError("enumeration does not name a single endomorphism".into())),
    }
}
