use std::fmt;

use crate::error::{Error, Result};
use crate::statistics::Term;

/// An ordered list of terms with one coefficient per term.
#[derive(Debug, Clone, PartialEq)]
pub struct Model {
    terms: Vec<Term>,
    theta: Vec<f64>,
}

impl Model {
    pub fn new(terms: Vec<Term>, theta: Vec<f64>) -> Result<Model> {
        if terms.len() != theta.len() {
            return Err(Error::InvalidModel(format!(
                "{} terms but {} coefficients",
                terms.len(),
                theta.len()
            )));
        }
        for (i, term) in terms.iter().enumerate() {
            term.validate()?;
            if terms[..i].iter().any(|t| t.identity() == term.identity()) {
                return Err(Error::InvalidModel(format!("duplicate term {term}")));
            }
        }
        let has_sum = terms
            .iter()
            .any(|t| matches!(t, Term::FourCyclesNodePowerSum(_)));
        let has_variant = terms.iter().any(|t| {
            matches!(
                t,
                Term::FourCyclesNodePowerA(_) | Term::FourCyclesNodePowerB(_)
            )
        });
        if has_sum && has_variant {
            return Err(Error::InvalidModel(
                "FourCyclesNodePowerSum is the sum of the A and B variants and cannot be combined with them"
                    .into(),
            ));
        }
        if let Some(bad) = theta.iter().find(|x| !x.is_finite()) {
            return Err(Error::InvalidModel(format!("non-finite coefficient {bad}")));
        }
        Ok(Model { terms, theta })
    }

    /// A model with every coefficient zero.
    pub fn zeros(terms: Vec<Term>) -> Result<Model> {
        let n = terms.len();
        Model::new(terms, vec![0.0; n])
    }

    pub fn empty() -> Model {
        Model {
            terms: Vec::new(),
            theta: Vec::new(),
        }
    }

    /// Parses `Kind[shape]=theta` tokens separated by commas. A token without
    /// `=theta` gets a zero coefficient.
    pub fn parse(spec: &str) -> Result<Model> {
        let mut terms = Vec::new();
        let mut theta = Vec::new();
        for token in spec.split(',').map(str::trim).filter(|t| !t.is_empty()) {
            let (term, value) = match token.split_once('=') {
                Some((term, value)) => {
                    let value: f64 = value.trim().parse().map_err(|_| {
                        Error::InvalidModel(format!("bad coefficient in \"{token}\""))
                    })?;
                    (term, value)
                }
                None => (token, 0.0),
            };
            terms.push(term.parse::<Term>()?);
            theta.push(value);
        }
        Model::new(terms, theta)
    }

    pub fn terms(&self) -> &[Term] {
        &self.terms
    }

    pub fn theta(&self) -> &[f64] {
        &self.theta
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn with_theta(&self, theta: Vec<f64>) -> Result<Model> {
        Model::new(self.terms.clone(), theta)
    }

    /// Appends a term, failing on duplicates.
    pub fn with_term(&self, term: Term, theta: f64) -> Result<Model> {
        let mut terms = self.terms.clone();
        let mut coefs = self.theta.clone();
        terms.push(term);
        coefs.push(theta);
        Model::new(terms, coefs)
    }

    pub fn position(&self, term: &Term) -> Option<usize> {
        self.terms.iter().position(|t| t.identity() == term.identity())
    }

    pub fn term_names(&self) -> Vec<String> {
        self.terms.iter().map(Term::to_string).collect()
    }
}

impl fmt::Display for Model {
    /// Round-trips through [`Model::parse`].
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, (term, theta)) in self.terms.iter().zip(&self.theta).enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{term}={theta}")?;
        }
        Ok(())
    }
}
