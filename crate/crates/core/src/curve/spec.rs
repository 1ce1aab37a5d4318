use std::collections::BTreeMap;
use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::expr::{parse_expression, Expr};

/// Fewest samples a spec may request.
pub const MIN_SAMPLES: usize = 64;
pub const DEFAULT_SAMPLES: usize = 2001;

/// Symbolic definition of a curve in E3 or E4.
#[derive(Debug, Clone, PartialEq)]
pub struct CurveSpec {
    pub name: String,
    components: Vec<String>,
    exprs: Vec<Expr>,
    pub domain: (f64, f64),
    pub samples: usize,
    /// Parameter value at which the parallel-transport frame coincides with
    /// the Frenet frame. May lie outside the domain.
    pub anchor: Option<f64>,
    pub metadata: BTreeMap<String, String>,
}

impl CurveSpec {
    pub fn new(name: &str, components: &[&str], domain: (f64, f64), samples: usize) -> Result<Self> {
        let exprs = components
            .iter()
            .enumerate()
            .map(|(i, c)| {
                parse_expression(c).map_err(|diagnostic| Error::ComponentParse {
                    index: i + 1,
                    diagnostic,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        let spec = Self {
            name: name.to_string(),
            components: components.iter().map(|c| c.to_string()).collect(),
            exprs,
            domain,
            samples,
            anchor: None,
            metadata: BTreeMap::new(),
        };
        spec.validate()?;
        Ok(spec)
    }

    pub fn validate(&self) -> Result<()> {
        let d = self.components.len();
        if !(3..=4).contains(&d) {
            return Err(Error::InvalidSpec(format!("need 3 or 4 components, got {d}")));
        }
        let (a, b) = self.domain;
        if !(a.is_finite() && b.is_finite() && a < b) {
            return Err(Error::InvalidSpec(format!("domain [{a}, {b}] is not an interval")));
        }
        if self.samples < MIN_SAMPLES {
            return Err(Error::InvalidSpec(format!(
                "samples = {} is below the minimum of {MIN_SAMPLES}",
                self.samples
            )));
        }
        if let Some(s0) = self.anchor {
            if !s0.is_finite() {
                return Err(Error::InvalidSpec("anchor must be finite".into()));
            }
        }
        if self.name.trim().is_empty() || self.name.contains('\n') {
            return Err(Error::InvalidSpec("name must be a non-empty single line".into()));
        }
        Ok(())
    }

    pub fn with_anchor(mut self, anchor: f64) -> Self {
        self.anchor = Some(anchor);
        self
    }

    pub fn with_metadata(mut self, key: &str, value: impl ToString) -> Self {
        self.metadata.insert(key.to_string(), value.to_string());
        self
    }

    pub fn with_domain(mut self, domain: (f64, f64)) -> Result<Self> {
        self.domain = domain;
        self.validate()?;
        Ok(self)
    }

    pub fn with_samples(mut self, samples: usize) -> Result<Self> {
        self.samples = samples;
        self.validate()?;
        Ok(self)
    }

    pub fn dimension(&self) -> usize {
        self.components.len()
    }

    /// Component source text as written.
    pub fn components(&self) -> &[String] {
        &self.components
    }

    pub fn expressions(&self) -> &[Expr] {
        &self.exprs
    }

    /// Flat `key = value` serialisation read back by [`CurveSpec::from_text`].
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "name = {}", self.name);
        let _ = writeln!(out, "dimension = {}", self.dimension());
        let _ = writeln!(out, "domain = {:?}, {:?}", self.domain.0, self.domain.1);
        let _ = writeln!(out, "samples = {}", self.samples);
        if let Some(a) = self.anchor {
            let _ = writeln!(out, "anchor = {a:?}");
        }
        for (i, c) in self.components.iter().enumerate() {
            let _ = writeln!(out, "component_{} = {}", i + 1, c);
        }
        for (k, v) in &self.metadata {
            let _ = writeln!(out, "meta.{k} = {v}");
        }
        out
    }

    /// Parses a spec file. Blank lines and lines starting with `#` are skipped.
    pub fn from_text(text: &str) -> Result<Self> {
        let mut name = None;
        let mut dimension = None;
        let mut domain = None;
        let mut samples = DEFAULT_SAMPLES;
        let mut anchor = None;
        let mut components: BTreeMap<usize, String> = BTreeMap::new();
        let mut metadata = BTreeMap::new();
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let bad = |what: &str| Error::InvalidSpec(format!("line {}: {what}", lineno + 1));
            let (key, value) = line.split_once('=').ok_or_else(|| bad("expected `key = value`"))?;
            let (key, value) = (key.trim(), value.trim());
            match key {
                "name" => name = Some(value.to_string()),
                "dimension" => {
                    dimension = Some(value.parse::<usize>().map_err(|_| bad("bad dimension"))?)
                }
                "domain" => domain = Some(parse_domain(value).ok_or_else(|| bad("bad domain"))?),
                "samples" => samples = value.parse().map_err(|_| bad("bad sample count"))?,
                "anchor" => anchor = Some(value.parse::<f64>().map_err(|_| bad("bad anchor"))?),
                _ => {
                    if let Some(idx) = key.strip_prefix("component_") {
                        let idx: usize = idx.parse().map_err(|_| bad("bad component index"))?;
                        if components.insert(idx, value.to_string()).is_some() {
                            return Err(bad("duplicate component"));
                        }
                    } else if let Some(meta) = key.strip_prefix("meta.") {
                        metadata.insert(meta.to_string(), value.to_string());
                    } else {
                        return Err(bad(&format!("unknown key `{key}`")));
                    }
                }
            }
        }
        let name = name.ok_or_else(|| Error::InvalidSpec("missing `name`".into()))?;
        let domain = domain.ok_or_else(|| Error::InvalidSpec("missing `domain`".into()))?;
        let d = dimension.unwrap_or(components.len());
        if components.len() != d || components.keys().copied().ne(1..=d) {
            return Err(Error::InvalidSpec(format!(
                "dimension {d} needs exactly component_1..component_{d}"
            )));
        }
        let texts: Vec<&str> = components.values().map(String::as_str).collect();
        let mut spec = CurveSpec::new(&name, &texts, domain, samples)?;
        spec.anchor = anchor;
        spec.metadata = metadata;
        spec.validate()?;
        Ok(spec)
    }
}

/// `a, b` with optional surrounding brackets.
pub fn parse_domain(text: &str) -> Option<(f64, f64)> {
    let inner = text.trim().trim_start_matches('[').trim_end_matches(']');
    let (a, b) = inner.split_once(',')?;
    Some((a.trim().parse().ok()?, b.trim().parse().ok()?))
}
