//! Field documents: the JSON schema for vector fields with optional eigen
//! data, plus matrix files and witness serialization. Emission is canonical
//! (sorted terms, lowest-term coefficient strings), so emitting and
//! re-parsing reproduces the identical field, and re-emitting a parsed
//! canonical document is byte-identical.

use std::collections::BTreeSet;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::ParseError;
use crate::field::VectorField;
use crate::matrix::ExactMatrix;
use crate::multiindex::MultiIndex;
use crate::normal_form::EigenData;
use crate::poly::ScalarPoly;
use crate::scalar::GaussianRational;

type Coeff = GaussianRational;
type Field = VectorField<Coeff>;
type Matrix = ExactMatrix<Coeff>;
type Eigen = EigenData<Coeff>;

/// One nonlinear term `coeff * u^exponents e_component`; components are
/// 1-based in documents.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermSpec {
    pub component: usize,
    pub exponents: Vec<u32>,
    pub coeff: String,
}

/// Optional eigen block: stated eigenvalues and, unless the linear part is
/// already diagonal, the change-of-basis matrix `P`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EigenSpec {
    pub values: Vec<String>,
    #[serde(rename = "P", skip_serializing_if = "Option::is_none", default)]
    pub p: Option<Vec<Vec<String>>>,
}

/// JSON document for one vector field `u' = Au + F(u)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FieldSpecDocument {
    pub n: usize,
    pub truncation: u32,
    #[serde(rename = "A")]
    pub a: Vec<Vec<String>>,
    pub terms: Vec<TermSpec>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub eigen: Option<EigenSpec>,
}

/// Serialized scalar polynomial, used in reports.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PolySpec {
    pub n: usize,
    pub truncation: u32,
    pub terms: Vec<PolyTermSpec>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PolyTermSpec {
    pub exponents: Vec<u32>,
    pub coeff: String,
}

pub fn parse_coeff(s: &str, path: &str) -> Result<Coeff, ParseError> {
    s.parse::<Coeff>()
        .map_err(|e| ParseError::field(path, e.to_string()))
}

pub fn matrix_from_strings(rows: &[Vec<String>], path: &str) -> Result<Matrix, ParseError> {
    let nrows = rows.len();
    let ncols = rows.first().map_or(0, Vec::len);
    let mut out = Vec::with_capacity(nrows);
    for (r, row) in rows.iter().enumerate() {
        if row.len() != ncols {
            return Err(ParseError::field(
                format!("{path}[{r}]"),
                format!("row has {} entries, expected {ncols}", row.len()),
            ));
        }
        let mut parsed = Vec::with_capacity(ncols);
        for (c, cell) in row.iter().enumerate() {
            parsed.push(parse_coeff(cell, &format!("{path}[{r}][{c}]"))?);
        }
        out.push(parsed);
    }
    Matrix::from_rows(out).map_err(|e| ParseError::field(path, e.to_string()))
}

pub fn matrix_to_strings(m: &Matrix) -> Vec<Vec<String>> {
    (0..m.rows())
        .map(|r| (0..m.cols()).map(|c| m.get(r, c).to_string()).collect())
        .collect()
}

/// Validate a document and build the field plus optional eigen data.
pub fn field_from_document(doc: &FieldSpecDocument) -> Result<(Field, Option<Eigen>), ParseError> {
    let n = doc.n;
    if n == 0 {
        return Err(ParseError::field("n", "dimension must be at least 1"));
    }
    if doc.truncation < 1 {
        return Err(ParseError::field("truncation", "must be at least 1"));
    }
    if doc.a.len() != n {
        return Err(ParseError::field(
            "A",
            format!("expected {n} rows, found {}", doc.a.len()),
        ));
    }
    let a = matrix_from_strings(&doc.a, "A")?;
    if a.cols() != n {
        return Err(ParseError::field("A", format!("expected {n} columns")));
    }

    let mut seen: BTreeSet<(usize, Vec<u32>)> = BTreeSet::new();
    let mut terms = Vec::with_capacity(doc.terms.len());
    for (idx, t) in doc.terms.iter().enumerate() {
        let path = format!("terms[{idx}]");
        if t.component < 1 || t.component > n {
            return Err(ParseError::field(
                format!("{path}.component"),
                format!("component {} outside 1..={n}", t.component),
            ));
        }
        if t.exponents.len() != n {
            return Err(ParseError::field(
                format!("{path}.exponents"),
                format!("expected {n} exponents, found {}", t.exponents.len()),
            ));
        }
        let degree: u32 = t.exponents.iter().sum();
        if degree < 2 || degree > doc.truncation {
            return Err(ParseError::field(
                format!("{path}.exponents"),
                format!(
                    "term degree {degree} outside 2..={} (linear terms belong in A)",
                    doc.truncation
                ),
            ));
        }
        let coeff = parse_coeff(&t.coeff, &format!("{path}.coeff"))?;
        if num_traits::Zero::is_zero(&coeff) {
            return Err(ParseError::field(
                format!("{path}.coeff"),
                "zero coefficients must be omitted",
            ));
        }
        if !seen.insert((t.component, t.exponents.clone())) {
            return Err(ParseError::field(
                path,
                "duplicate (component, exponents) key",
            ));
        }
        terms.push((
            t.component - 1,
            MultiIndex::new(t.exponents.clone()),
            coeff,
        ));
    }
    let field = Field::from_parts(a, terms, doc.truncation)
        .map_err(|e| ParseError::field("terms", e.to_string()))?;

    let eigen = match &doc.eigen {
        None => None,
        Some(spec) => {
            if spec.values.len() != n {
                return Err(ParseError::field(
                    "eigen.values",
                    format!("expected {n} eigenvalues, found {}", spec.values.len()),
                ));
            }
            let mut values = Vec::with_capacity(n);
            for (i, v) in spec.values.iter().enumerate() {
                values.push(parse_coeff(v, &format!("eigen.values[{i}]"))?);
            }
            match &spec.p {
                None => Some(Eigen::diagonal(values)),
                Some(rows) => {
                    let p = matrix_from_strings(rows, "eigen.P")?;
                    if p.rows() != n || p.cols() != n {
                        return Err(ParseError::field("eigen.P", format!("expected {n}x{n}")));
                    }
                    Some(
                        Eigen::with_basis(values, p)
                            .map_err(|e| ParseError::field("eigen", e.to_string()))?,
                    )
                }
            }
        }
    };
    Ok((field, eigen))
}

/// Canonical document for a field: terms in (component, graded-lex) order
/// with lowest-term coefficient strings.
pub fn document_from_field(field: &Field, eigen: Option<&Eigen>) -> FieldSpecDocument {
    FieldSpecDocument {
        n: field.dim(),
        truncation: field.truncation(),
        a: matrix_to_strings(field.linear_part()),
        terms: field
            .nonlinear_terms()
            .map(|(j, q, c)| TermSpec {
                component: j + 1,
                exponents: q.exponents().to_vec(),
                coeff: c.to_string(),
            })
            .collect(),
        eigen: eigen.map(|e| EigenSpec {
            values: e.values().iter().map(ToString::to_string).collect(),
            p: e.basis().map(matrix_to_strings),
        }),
    }
}

pub fn poly_to_spec(p: &ScalarPoly<Coeff>) -> PolySpec {
    PolySpec {
        n: p.dim(),
        truncation: p.truncation(),
        terms: p
            .terms()
            .map(|(q, c)| PolyTermSpec {
                exponents: q.exponents().to_vec(),
                coeff: c.to_string(),
            })
            .collect(),
    }
}

/// Canonical JSON rendering with a trailing newline.
pub fn emit_document(doc: &FieldSpecDocument) -> String {
    let mut text = serde_json::to_string_pretty(doc).expect("document serializes");
    text.push('\n');
    text
}

fn json_error(e: &serde_json::Error) -> ParseError {
    ParseError::Json {
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    }
}

/// Parse a document from JSON text and validate it into a field.
pub fn parse_field_str(text: &str) -> Result<(FieldSpecDocument, Field, Option<Eigen>), ParseError> {
    let doc: FieldSpecDocument = serde_json::from_str(text).map_err(|e| json_error(&e))?;
    let (field, eigen) = field_from_document(&doc)?;
    Ok((doc, field, eigen))
}

pub fn parse_field_file(
    path: &Path,
) -> Result<(FieldSpecDocument, Field, Option<Eigen>), ParseError> {
    let text = std::fs::read_to_string(path).map_err(|e| ParseError::Io {
        path: path.display().to_string(),
        source: e,
    })?;
    parse_field_str(&text)
}

/// Parse a matrix file: a JSON array of rows of coefficient strings.
pub fn parse_matrix_file(path: &Path) -> Result<Matrix, ParseError> {
    let text = std::fs::read_to_string(path).map_err(|e| ParseError::Io {
        path: path.display().to_string(),
        source: e,
    })?;
    let rows: Vec<Vec<String>> = serde_json::from_str(&text).map_err(|e| json_error(&e))?;
    matrix_from_strings(&rows, "matrix")
}
