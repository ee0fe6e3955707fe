//! Pluggable term-weighting schemes.
//!
//! Every scheme contributes a multiplicative factor `F` applied on top of
//! tf·idf; the final weight of a term in a document is `tf · idf · F`.
//! Schemes live behind the [`WeightingScheme`] trait and are looked up by
//! name in a [`SchemeRegistry`], so the scheme used by a run is chosen at
//! runtime from configuration. Two schemes ship built in:
//!
//! - `tfidf` — `F = 1`, the plain baseline.
//! - `distributional` — `F = (1 + alpha·(1 − first)) · (1 + beta·c̃)` where
//!   `first` is the normalized position of the earliest occurrence and `c̃`
//!   is compactness normalized to `[0, 1]`. Earlier first appearances and
//!   wider spread both raise the weight.

use std::collections::BTreeMap;
use std::sync::{Arc, OnceLock};

use crate::error::Error;
use crate::Result;

/// Parameters handed to a scheme: which scheme by name, plus the two
/// augmentation strengths. `alpha` scales the first-appearance boost and
/// `beta` the spread boost; the `tfidf` scheme ignores both.
#[derive(Debug, Clone, PartialEq)]
pub struct WeightingParams {
    pub scheme: String,
    pub alpha: f64,
    pub beta: f64,
}

impl WeightingParams {
    pub fn tfidf() -> WeightingParams {
        WeightingParams {
            scheme: "tfidf".to_string(),
            alpha: 0.0,
            beta: 0.0,
        }
    }

    pub fn distributional(alpha: f64, beta: f64) -> WeightingParams {
        WeightingParams {
            scheme: "distributional".to_string(),
            alpha,
            beta,
        }
    }

    /// Short human-readable form, e.g. `distributional(alpha=1, beta=1)`.
    pub fn describe(&self) -> String {
        if self.scheme == "tfidf" {
            self.scheme.clone()
        } else {
            format!("{}(alpha={}, beta={})", self.scheme, self.alpha, self.beta)
        }
    }
}

impl Default for WeightingParams {
    fn default() -> Self {
        WeightingParams::distributional(1.0, 1.0)
    }
}

/// One weighting strategy. `factor` receives the term's first-appearance
/// position in `[0, 1)` and its normalized compactness `c̃` in `[0, 1]` and
/// returns the multiplier applied to tf·idf.
pub trait WeightingScheme: Send + Sync {
    fn name(&self) -> &'static str;
    fn factor(&self, first: f64, compactness: f64, params: &WeightingParams) -> f64;
}

/// Plain tf·idf: the factor is always 1.
#[derive(Debug, Default)]
pub struct PlainTfIdf;

impl WeightingScheme for PlainTfIdf {
    fn name(&self) -> &'static str {
        "tfidf"
    }

    fn factor(&self, _first: f64, _compactness: f64, _params: &WeightingParams) -> f64 {
        1.0
    }
}

/// Distributionally augmented tf·idf. With `alpha = beta = 0` the factor
/// degenerates to exactly 1, so this scheme reduces to `tfidf`.
#[derive(Debug, Default)]
pub struct Distributional;

impl WeightingScheme for Distributional {
    fn name(&self) -> &'static str {
        "distributional"
    }

    fn factor(&self, first: f64, compactness: f64, params: &WeightingParams) -> f64 {
        (1.0 + params.alpha * (1.0 - first)) * (1.0 + params.beta * compactness)
    }
}

/// Name-indexed registry of weighting schemes.
#[derive(Default)]
pub struct SchemeRegistry {
    schemes: BTreeMap<String, Arc<dyn WeightingScheme>>,
}

impl SchemeRegistry {
    pub fn empty() -> SchemeRegistry {
        SchemeRegistry::default()
    }

    /// Registry holding the two built-in schemes.
    pub fn builtin() -> SchemeRegistry {
        let mut registry = SchemeRegistry::empty();
        registry.register(Arc::new(PlainTfIdf));
        registry.register(Arc::new(Distributional));
        registry
    }

    /// Register a scheme under its own name, replacing any previous scheme
    /// with that name.
    pub fn register(&mut self, scheme: Arc<dyn WeightingScheme>) {
        self.schemes.insert(scheme.name().to_string(), scheme);
    }

    pub fn resolve(&self, name: &str) -> Result<&dyn WeightingScheme> {
        self.schemes
            .get(name)
            .map(|s| s.as_ref())
            .ok_or_else(|| Error::UnknownScheme {
                name: name.to_string(),
                known: self.names().collect::<Vec<_>>().join(", "),
            })
    }

    pub fn names(&self) -> impl Iterator<Item = &str> {
        self.schemes.keys().map(String::as_str)
    }
}

/// The process-wide registry with the built-in schemes.
pub fn default_registry() -> &'static SchemeRegistry {
    static REGISTRY: OnceLock<SchemeRegistry> = OnceLock::new();
    REGISTRY.get_or_init(SchemeRegistry::builtin)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tfidf_factor_ignores_params() {
        let params = WeightingParams {
            scheme: "tfidf".into(),
            alpha: 5.0,
            beta: 7.0,
        };
        assert_eq!(PlainTfIdf.factor(0.0, 1.0, &params), 1.0);
    }

    #[test]
    fn distributional_reduces_to_one_at_zero() {
        let params = WeightingParams::distributional(0.0, 0.0);
        assert_eq!(Distributional.factor(0.3, 0.7, &params), 1.0);
    }

    #[test]
    fn distributional_factor_direct_value() {
        // first = 0, c = 1, alpha = beta = 1 -> (1+1)(1+1) = 4
        let params = WeightingParams::distributional(1.0, 1.0);
        assert_eq!(Distributional.factor(0.0, 1.0, &params), 4.0);
    }

    #[test]
    fn registry_resolves_builtins() {
        let registry = SchemeRegistry::builtin();
        assert_eq!(registry.resolve("tfidf").unwrap().name(), "tfidf");
        assert_eq!(registry.resolve("distributional").unwrap().name(), "distributional");
    }

    #[test]
    fn registry_unknown_scheme_lists_known() {
        let registry = SchemeRegistry::builtin();
        match registry.resolve("bm25").map(|s| s.name()) {
            Err(Error::UnknownScheme { name, known }) => {
                assert_eq!(name, "bm25");
                assert_eq!(known, "distributional, tfidf");
            }
            other => panic!("expected UnknownScheme, got {other:?}"),
        }
    }

    #[test]
    fn registry_accepts_custom_schemes() {
        struct Flat;
        impl WeightingScheme for Flat {
            fn name(&self) -> &'static str {
                "flat"
            }
            fn factor(&self, _: f64, _: f64, _: &WeightingParams) -> f64 {
                2.0
            }
        }
        let mut registry = SchemeRegistry::builtin();
        registry.register(Arc::new(Flat));
        assert_eq!(registry.resolve("flat").unwrap().factor(0.5, 0.5, &WeightingParams::default()), 2.0);
    }
}
