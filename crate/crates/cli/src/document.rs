//! JSON documents: polynomials in the `y` variables and the correlator cache.

use std::path::Path;

use cutjoin_core::algebra::rational::Rational;
use cutjoin_core::algebra::{TauFun, TauPoly, YPoly, YPolynomial};
use num_bigint::BigInt;
use serde::{Deserialize, Serialize};
use thiserror::Error;

pub const GENERATOR: &str = concat!("cutjoin ", env!("CARGO_PKG_VERSION"));

/// Bumped whenever cached values could be stale.
pub const CACHE_VERSION: u32 = 1;

#[derive(Debug, Error)]
pub enum DocumentError {
    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("term {term}: {message}")]
    Term { term: usize, message: String },
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl From<serde_json::Error> for DocumentError {
    fn from(e: serde_json::Error) -> Self {
        DocumentError::Parse {
            line: e.line(),
            column: e.column(),
            message: e.to_string(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Metadata {
    pub g: Option<u32>,
    pub m: Option<usize>,
    pub degree: Option<u32>,
    pub generator: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DocTerm {
    pub exponents: Vec<u32>,
    pub num: String,
    pub den: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PolynomialDocument {
    pub variables: Vec<String>,
    pub terms: Vec<DocTerm>,
    pub metadata: Metadata,
}

impl PolynomialDocument {
    pub fn from_poly(p: &YPolynomial, g: Option<u32>, m: Option<usize>) -> Self {
        let variables = (1..=p.num_vars()).map(|i| format!("y{i}")).collect();
        let terms = p
            .graded_terms()
            .into_iter()
            .map(|(e, c)| DocTerm {
                exponents: e.clone(),
                num: c.num().to_string(),
                den: c.den().to_string(),
            })
            .collect();
        PolynomialDocument {
            variables,
            terms,
            metadata: Metadata {
                g,
                m,
                degree: p.total_degree(),
                generator: GENERATOR.to_string(),
            },
        }
    }

    pub fn to_poly(&self) -> Result<YPolynomial, DocumentError> {
        let n = self.variables.len();
        let mut p = YPoly::zero(n);
        for (i, t) in self.terms.iter().enumerate() {
            let bad = |message: String| DocumentError::Term { term: i, message };
            if t.exponents.len() != n {
                return Err(bad(format!(
                    "expected {n} exponents, found {}",
                    t.exponents.len()
                )));
            }
            let num: TauPoly = t.num.parse().map_err(|e| bad(format!("numerator: {e}")))?;
            let den: TauPoly = t
                .den
                .parse()
                .map_err(|e| bad(format!("denominator: {e}")))?;
            let c = TauFun::new(num, den).map_err(|e| bad(e.to_string()))?;
            p.add_term(t.exponents.clone(), c);
        }
        Ok(p)
    }

    pub fn render(&self) -> String {
        serde_json::to_string_pretty(self).expect("documents always serialize")
    }

    pub fn parse(s: &str) -> Result<Self, DocumentError> {
        Ok(serde_json::from_str(s)?)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CacheEntry {
    pub genus: u32,
    pub psi: Vec<u32>,
    pub lambda: Vec<u32>,
    pub num: String,
    pub den: String,
}

impl CacheEntry {
    pub fn value(&self) -> Option<Rational> {
        let num: BigInt = self.num.parse().ok()?;
        let den: BigInt = self.den.parse().ok()?;
        (den != BigInt::from(0)).then(|| Rational::new(num, den))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CacheFile {
    pub version: u32,
    pub entries: Vec<CacheEntry>,
}

impl CacheFile {
    pub fn from_values(values: impl IntoIterator<Item = (u32, Vec<u32>, Rational)>) -> Self {
        let mut entries: Vec<CacheEntry> = values
            .into_iter()
            .map(|(genus, psi, v)| CacheEntry {
                genus,
                psi,
                lambda: Vec::new(),
                num: v.numer().to_string(),
                den: v.denom().to_string(),
            })
            .collect();
        entries.sort_by(|a, b| (a.genus, &a.psi, &a.lambda).cmp(&(b.genus, &b.psi, &b.lambda)));
        CacheFile {
            version: CACHE_VERSION,
            entries,
        }
    }

    /// Pure-ψ entries as exact values; malformed entries are an error.
    pub fn psi_values(&self) -> Result<Vec<(u32, Vec<u32>, Rational)>, DocumentError> {
        self.entries
            .iter()
            .enumerate()
            .filter(|(_, e)| e.lambda.is_empty())
            .map(|(i, e)| {
                e.value()
                    .map(|v| (e.genus, e.psi.clone(), v))
                    .ok_or_else(|| DocumentError::Term {
                        term: i,
                        message: format!("bad value {}/{}", e.num, e.den),
                    })
            })
            .collect()
    }

    pub fn render(&self) -> String {
        serde_json::to_string_pretty(self).expect("cache always serializes")
    }

    pub fn parse(s: &str) -> Result<Self, DocumentError> {
        Ok(serde_json::from_str(s)?)
    }

    /// `None` when the file is missing or was written by another cache
    /// version; the caller rebuilds in both cases.
    pub fn load(path: &Path) -> Result<Option<Self>, DocumentError> {
        let text = match std::fs::read_to_string(path) {
            Ok(t) => t,
            Err(e) if e.kind() == std::io::ErrorKind::NotFound => return Ok(None),
            Err(e) => return Err(e.into()),
        };
        #[derive(Deserialize)]
        struct Header {
            version: u32,
        }
        let header: Header = serde_json::from_str(&text)?;
        if header.version != CACHE_VERSION {
            return Ok(None);
        }
        Ok(Some(Self::parse(&text)?))
    }

    /// Writes to a sibling temporary file and renames it into place.
    pub fn save(&self, path: &Path) -> Result<(), DocumentError> {
        use std::io::Write;
        let dir = match path.parent() {
            Some(d) if !d.as_os_str().is_empty() => d,
            _ => Path::new("."),
        };
        let mut tmp = tempfile::NamedTempFile::new_in(dir)?;
        tmp.write_all(self.render().as_bytes())?;
        tmp.write_all(b"\n")?;
        tmp.as_file().sync_all()?;
        tmp.persist(path).map_err(|e| e.error)?;
        Ok(())
    }
}
