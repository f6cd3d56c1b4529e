//! Presentation files: `{p, n, target_degrees, source_degrees, matrix}`.

use serde::{Deserialize, Serialize};

use super::free::{GradedFreeModule, GradedMap, Ring};
use super::module::PresentedModule;
use crate::algebra::{parse_poly, PrimeField};
use crate::error::{Error, Result};

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct PresentationFile {
    pub p: u64,
    pub n: usize,
    pub target_degrees: Vec<i32>,
    pub source_degrees: Vec<i32>,
    /// target rows × source columns, polynomial strings
    pub matrix: Vec<Vec<String>>,
}

/// Line and column (1-based) of byte offset `pos` in `text`.
fn line_col(text: &str, pos: usize) -> (usize, usize) {
    let before = &text[..pos.min(text.len())];
    let line = before.matches('\n').count() + 1;
    let col = before.len() - before.rfind('\n').map_or(0, |i| i + 1) + 1;
    (line, col)
}

impl PresentationFile {
    pub fn from_module(m: &PresentedModule) -> Self {
        let pres = m.presentation();
        let ring = m.ring();
        PresentationFile {
            p: ring.field.p() as u64,
            n: ring.n,
            target_degrees: pres.target.degrees.clone(),
            source_degrees: pres.source.degrees.clone(),
            matrix: (0..pres.rows())
                .map(|i| (0..pres.cols()).map(|j| pres.entry(i, j).to_string()).collect())
                .collect(),
        }
    }

    /// Build the module; `text` (the original file) is only used to point
    /// polynomial errors at a line and column.
    pub fn to_module(&self, text: Option<&str>) -> Result<PresentedModule> {
        let field = PrimeField::new(self.p)?;
        let ring = Ring::new(field, self.n);
        let rows = self.target_degrees.len();
        let cols = self.source_degrees.len();
        let shape_ok = self.matrix.len() == rows && self.matrix.iter().all(|r| r.len() == cols)
            || (cols == 0 && self.matrix.is_empty());
        if !shape_ok {
            return Err(Error::Parse {
                line: 1,
                col: 1,
                msg: format!("matrix must have {rows} rows of {cols} entries"),
            });
        }
        let mut entries = Vec::with_capacity(rows * cols);
        let mut search_from = 0;
        for (i, row) in self.matrix.iter().enumerate() {
            for (j, s) in row.iter().enumerate() {
                // locate the literal for error reporting
                let quoted = format!("\"{s}\"");
                let at = text.and_then(|t| t[search_from..].find(&quoted).map(|k| k + search_from));
                if let Some(k) = at {
                    search_from = k + quoted.len();
                }
                match parse_poly(s, field, ring.nvars()) {
                    Ok(p) => entries.push(p),
                    Err(e) => {
                        let (line, col) = match (text, at) {
                            (Some(t), Some(k)) => {
                                let (l, c) = line_col(t, k + 1);
                                (l, c + e.col - 1)
                            }
                            _ => (i + 1, e.col),
                        };
                        return Err(Error::Parse { line, col, msg: format!("matrix[{i}][{j}]: {}", e.msg) });
                    }
                }
            }
        }
        let pres = GradedMap::new(
            ring,
            GradedFreeModule::new(self.target_degrees.clone()),
            GradedFreeModule::new(self.source_degrees.clone()),
            entries,
        )?;
        Ok(PresentedModule::new(pres))
    }
}

pub fn parse_presentation(text: &str) -> Result<PresentedModule> {
    let file: PresentationFile = serde_json::from_str(text)
        .map_err(|e| Error::Parse { line: e.line(), col: e.column(), msg: e.to_string() })?;
    file.to_module(Some(text))
}

pub fn presentation_to_json(m: &PresentedModule) -> String {
    serde_json::to_string_pretty(&PresentationFile::from_module(m)).expect("serializable")
}

#[cfg(test)]
mod tests {
    use super::*;

    const SAMPLE: &str = r#"{
  "p": 32003,
  "n": 3,
  "target_degrees": [0],
  "source_degrees": [1, 3],
  "matrix": [["x0", "2*x0^2*x3 - x1*x2^2"]]
}"#;

    #[test]
    fn round_trip() {
        let m = parse_presentation(SAMPLE).unwrap();
        let back = presentation_to_json(&m);
        let m2 = parse_presentation(&back).unwrap();
        assert_eq!(m.presentation(), m2.presentation());
        assert_eq!(PresentationFile::from_module(&m2), serde_json::from_str::<PresentationFile>(SAMPLE).unwrap());
    }

    #[test]
    fn polynomial_error_location() {
        let bad = SAMPLE.replace("x1*x2^2", "x1*x7^2");
        match parse_presentation(&bad) {
            Err(Error::Parse { line, col, .. }) => {
                assert_eq!(line, 6);
                let l = bad.lines().nth(5).unwrap();
                assert_eq!(&l[col - 1..col + 1], "x7");
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn json_syntax_error_location() {
        match parse_presentation("{\n  \"p\": 3,\n  oops\n}") {
            Err(Error::Parse { line, .. }) => assert_eq!(line, 3),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn degree_check() {
        let bad = SAMPLE.replace("\"x0\"", "\"x0^2\"");
        assert!(matches!(parse_presentation(&bad), Err(Error::DegreeMismatch(_))));
    }
}
