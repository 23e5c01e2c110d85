//! Scenario override files.
//!
//! One `key = value` pair per line; blank lines and lines starting with `#`
//! are ignored. Recognised keys, each at most once:
//!
//! ```text
//! beta_image   = (1)            # β(1) in the coordinates of μ(−1)
//! gamma_kernel = chi; (0,1)     # kernel of γ, names or coordinates of C*
//! relations    = (2,0,0); (0,1,1)  # relations among the Brauer generators
//! ```
//!
//! `gamma_kernel` replaces `μ(−1)` by the quotient, so it must come with a
//! `beta_image` written in the quotient's coordinates.

use degmap_core::rootdata::parse_coords;
use degmap_core::Scenario;
use std::fmt;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("{line}:{col}: {message}")]
pub struct OverrideError {
    pub line: usize,
    pub col: usize,
    pub message: String,
}

/// A value together with where it started in the file.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Spanned<T> {
    pub value: T,
    pub line: usize,
    pub col: usize,
}

impl<T> Spanned<T> {
    fn error(&self, message: impl fmt::Display) -> OverrideError {
        OverrideError { line: self.line, col: self.col, message: message.to_string() }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Overrides {
    pub beta_image: Option<Spanned<Vec<i64>>>,
    /// Raw element tokens; resolved against the scenario's `C*`.
    pub gamma_kernel: Option<Vec<Spanned<String>>>,
    pub relations: Option<Spanned<Vec<Vec<i64>>>>,
}

impl Overrides {
    pub fn parse(text: &str) -> Result<Self, OverrideError> {
        let mut out = Overrides::default();
        let mut gamma_pos = None;
        for (idx, raw) in text.lines().enumerate() {
            let line = idx + 1;
            let trimmed = raw.trim_start();
            if trimmed.is_empty() || trimmed.starts_with('#') {
                continue;
            }
            let key_col = raw.len() - trimmed.len() + 1;
            let err = |col: usize, message: String| OverrideError { line, col, message };
            let eq = raw.find('=').ok_or_else(|| err(key_col, "expected `key = value`".into()))?;
            let key = raw[..eq].trim();
            let value_raw = &raw[eq + 1..];
            let value_col = eq + 2 + (value_raw.len() - value_raw.trim_start().len());
            let value = value_raw.trim();
            if value.is_empty() {
                return Err(err(eq + 2, format!("missing value for `{key}`")));
            }
            match key {
                "beta_image" => {
                    if out.beta_image.is_some() {
                        return Err(err(key_col, "duplicate key `beta_image`".into()));
                    }
                    let coords = parse_tuple(value).ok_or_else(|| {
                        err(value_col, format!("`{value}` is not an integer tuple"))
                    })?;
                    out.beta_image = Some(Spanned { value: coords, line, col: value_col });
                }
                "gamma_kernel" => {
                    if out.gamma_kernel.is_some() {
                        return Err(err(key_col, "duplicate key `gamma_kernel`".into()));
                    }
                    let items = split_items(value, value_col)
                        .into_iter()
                        .map(|(tok, col)| Spanned { value: tok.to_string(), line, col })
                        .collect();
                    out.gamma_kernel = Some(items);
                    gamma_pos = Some((line, key_col));
                }
                "relations" => {
                    if out.relations.is_some() {
                        return Err(err(key_col, "duplicate key `relations`".into()));
                    }
                    let mut rels = Vec::new();
                    for (tok, col) in split_items(value, value_col) {
                        let r = parse_tuple(tok)
                            .ok_or_else(|| err(col, format!("`{tok}` is not an integer tuple")))?;
                        rels.push(r);
                    }
                    out.relations = Some(Spanned { value: rels, line, col: value_col });
                }
                "" => return Err(err(key_col, "missing key".into())),
                other => {
                    return Err(err(
                        key_col,
                        format!("unknown key `{other}`; expected beta_image, gamma_kernel or relations"),
                    ))
                }
            }
        }
        if let (Some((line, col)), None) = (gamma_pos, &out.beta_image) {
            return Err(OverrideError { line, col, message: "gamma_kernel requires beta_image".into() });
        }
        Ok(out)
    }

    pub fn apply(&self, mut s: Scenario) -> Result<Scenario, OverrideError> {
        if let Some(kernel) = &self.gamma_kernel {
            let beta = self.beta_image.as_ref().expect("checked while parsing");
            let elems = kernel
                .iter()
                .map(|tok| s.rootsystem().parse_element(&tok.value).map_err(|e| tok.error(e)))
                .collect::<Result<Vec<_>, _>>()?;
            s = s.with_gamma_kernel(&elems, beta.value.clone()).map_err(|e| beta.error(e))?;
        } else if let Some(beta) = &self.beta_image {
            s = s.with_beta_image(beta.value.clone()).map_err(|e| beta.error(e))?;
        }
        if let Some(rels) = &self.relations {
            s = s.with_relations(rels.value.clone()).map_err(|e| rels.error(e))?;
        }
        Ok(s)
    }
}

fn parse_tuple(s: &str) -> Option<Vec<i64>> {
    let s = s.trim();
    if s.is_empty() {
        return None;
    }
    parse_coords(s)
}

/// Splits on `;`, returning each trimmed item with its 1-based column.
fn split_items(value: &str, start_col: usize) -> Vec<(&str, usize)> {
    let mut out = Vec::new();
    let mut offset = 0;
    for part in value.split(';') {
        let lead = part.len() - part.trim_start().len();
        if !part.trim().is_empty() {
            out.push((part.trim(), start_col + offset + lead));
        }
        offset += part.len() + 1;
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_all_keys() {
        let o = Overrides::parse(
            "# comment\n\nbeta_image = (1)\ngamma_kernel = chi; (0,1)\nrelations = (2,0,0); (0,1,1)\n",
        )
        .unwrap();
        assert_eq!(o.beta_image.as_ref().unwrap().value, vec![1]);
        let k: Vec<&str> = o.gamma_kernel.as_ref().unwrap().iter().map(|t| t.value.as_str()).collect();
        assert_eq!(k, ["chi", "(0,1)"]);
        assert_eq!(o.gamma_kernel.as_ref().unwrap()[1].col, 21);
        assert_eq!(o.relations.unwrap().value, vec![vec![2, 0, 0], vec![0, 1, 1]]);
    }

    #[test]
    fn reports_positions() {
        let e = Overrides::parse("beta_image = 1\n  colour = red\n").unwrap_err();
        assert_eq!((e.line, e.col), (2, 3));
        let e = Overrides::parse("relations = (1,0); (x)\n").unwrap_err();
        assert_eq!((e.line, e.col), (1, 20));
        let e = Overrides::parse("beta_image\n").unwrap_err();
        assert_eq!((e.line, e.col), (1, 1));
        let e = Overrides::parse("beta_image = 1\nbeta_image = 0\n").unwrap_err();
        assert_eq!(e.line, 2);
        let e = Overrides::parse("gamma_kernel = chi\n").unwrap_err();
        assert_eq!(e.to_string(), "1:1: gamma_kernel requires beta_image");
        let e = Overrides::parse("beta_image =   \n").unwrap_err();
        assert_eq!((e.line, e.col), (1, 13));
    }

    #[test]
    fn applies_to_scenarios() {
        let s = Scenario::e7().unwrap();
        let o = Overrides::parse("beta_image = 0\n").unwrap();
        let s = o.apply(s).unwrap();
        assert_eq!(s.beta().column(0), vec![0]);

        let o = Overrides::parse("beta_image = 1\ngamma_kernel = bogus\n").unwrap();
        let e = o.apply(Scenario::spin(4).unwrap()).unwrap_err();
        assert_eq!((e.line, e.col), (2, 16));
    }
}
