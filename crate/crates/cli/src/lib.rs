//! Front end for the `skewbrace` command: resolves groups and endomorphisms,
//! runs the requested checks and assembles a deterministic report.

pub mod analysis;
pub mod config;
pub mod sweep;

use serde::Serialize;
use serde_json::Value;
use skewbrace::Sign;

pub use analysis::{analyze, Analysis, Prediction};
pub use config::{parse_checks, Check, EndoSource, Format, GroupSource, InputError, RunConfig, Settings};
pub use sweep::{enumerate_and_classify, Summary};

pub const EXIT_OK: i32 = 0;
pub const EXIT_VIOLATION: i32 = 1;
pub const EXIT_INPUT: i32 = 2;

#[derive(Debug, Clone, Serialize)]
pub struct InputSection {
    pub group: String,
    pub group_name: String,
    pub order: usize,
    pub endo: String,
    pub psi: Vec<usize>,
    pub epsilon: Sign,
    pub checks: Vec<Check>,
    pub settings: Settings,
}

#[derive(Debug, Clone, Serialize)]
pub struct Report {
    pub input: InputSection,
    #[serde(flatten)]
    pub analysis: Analysis,
}

#[derive(Debug, Clone, Serialize)]
#[serde(untagged)]
pub enum Output {
    Report(Box<Report>),
    Summary(Summary),
}

impl Output {
    pub fn mismatches(&self) -> &[String] {
        match self {
            Output::Report(r) => &r.analysis.mismatches,
            Output::Summary(s) => &s.mismatches,
        }
    }

    pub fn exit_code(&self) -> i32 {
        if self.mismatches().is_empty() {
            EXIT_OK
        } else {
            EXIT_VIOLATION
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports serialize")
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Json => self.to_json(),
            Format::Text => render_text(&serde_json::to_value(self).expect("reports serialize")),
        }
    }
}

/// Resolves the sources and runs the checks. Input problems come back as
/// errors; property violations come back inside the output.
pub fn run(config: &RunConfig) -> Result<Output, InputError> {
    let loaded = config::load_group(&config.group)?;
    let group = &loaded.group;
    let settings = config.settings();
    let endo = config.endo.clone();
    if endo == Some(EndoSource::Enumerate) {
        let signs: Vec<Sign> = config.epsilon.map_or(Sign::BOTH.to_vec(), |e| vec![e]);
        return Ok(Output::Summary(enumerate_and_classify(group, &signs, &config.checks, &settings)?));
    }
    let (psi, endo_label) = match (&endo, &loaded.default_psi) {
        (Some(source), _) => (config::load_endo(group, source)?, source.to_string()),
        (None, Some(psi)) => (psi.clone(), "example".to_string()),
        (None, None) => (skewbrace::GroupMap::identity(group), EndoSource::Identity.to_string()),
    };
    let epsilon = config.epsilon.or(loaded.default_epsilon).unwrap_or(Sign::Minus);
    let analysis = analyze(group, &psi, epsilon, &config.checks, &settings)?;
    let input = InputSection {
        group: config.group.to_string(),
        group_name: group.name().to_string(),
        order: group.order(),
        endo: endo_label,
        psi: psi.images(),
        epsilon,
        checks: config.checks.iter().copied().collect(),
        settings,
    };
    Ok(Output::Report(Box::new(Report { input, analysis })))
}

/// Exit code for a finished or failed run.
pub fn exit_code(result: &Result<Output, InputError>) -> i32 {
    match result {
        Ok(out) => out.exit_code(),
        Err(_) => EXIT_INPUT,
    }
}

/// `path = value` lines, one per scalar, with short arrays kept inline.
pub fn render_text(value: &Value) -> String {
    let mut out = String::new();
    walk(value, "", &mut out);
    out
}

fn walk(value: &Value, path: &str, out: &mut String) {
    match value {
        Value::Object(map) => {
            for (k, v) in map {
                let child = if path.is_empty() { k.clone() } else { format!("{path}.{k}") };
                walk(v, &child, out);
            }
        }
        Value::Array(items) if items.iter().any(|v| v.is_object() || v.is_array()) => {
            for (i, v) in items.iter().enumerate() {
                walk(v, &format!("{path}[{i}]"), out);
            }
        }
        Value::Null => {}
        other => {
            out.push_str(path);
            out.push_str(" = ");
            match other {
                Value::String(s) => out.push_str(s),
                _ => out.push_str(&other.to_string()),
            }
            out.push('\n');
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use skewbrace::zoo::ZooSpec;

    #[test]
    fn trivial_group_passes_everything() {
        let cfg = RunConfig::new(GroupSource::Zoo(ZooSpec::Cyclic(1)));
        let out = run(&cfg).unwrap();
        assert_eq!(out.exit_code(), EXIT_OK);
        let Output::Report(r) = &out else { panic!("expected a report") };
        assert_eq!(r.input.order, 1);
        assert_eq!(r.analysis.ybe.iter().filter(|e| e.refused.is_none()).count(), 4);
    }

    #[test]
    fn missing_file_is_an_input_error() {
        let cfg = RunConfig::new(GroupSource::File("/nonexistent/table.txt".into()));
        assert_eq!(exit_code(&run(&cfg)), EXIT_INPUT);
    }

    #[test]
    fn text_rendering_flattens_paths() {
        let v = serde_json::json!({"a": {"b": 1, "c": [1, 2]}, "d": [{"e": true}], "f": null});
        assert_eq!(render_text(&v), "a.b = 1\na.c = [1,2]\nd[0].e = true\n");
    }
}
