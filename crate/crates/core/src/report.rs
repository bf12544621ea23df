//! Verdicts shared by every validator, and their `VERDICT` text form.

use std::fmt;

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Params {
    /// Neighbouring points on each line.
    pub t: usize,
    /// Order of the quotient plane.
    pub r: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Violation {
    pub axiom: String,
    pub witness: Vec<usize>,
}

impl Violation {
    pub fn new(axiom: impl Into<String>, witness: Vec<usize>) -> Self {
        debug_assert!(!witness.is_empty(), "violations always carry a witness");
        Violation {
            axiom: axiom.into(),
            witness,
        }
    }

    /// Same witness under a namespaced axiom id, e.g. `quotient:pp-lines`.
    pub fn nested(self, prefix: &str) -> Self {
        Violation {
            axiom: format!("{prefix}:{}", self.axiom),
            witness: self.witness,
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct VerificationReport {
    pub params: Option<Params>,
    pub violations: Vec<Violation>,
}

impl VerificationReport {
    pub fn pass(params: Option<Params>) -> Self {
        VerificationReport {
            params,
            violations: Vec::new(),
        }
    }

    pub fn fail(violations: Vec<Violation>) -> Self {
        assert!(!violations.is_empty());
        VerificationReport {
            params: None,
            violations,
        }
    }

    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn first_violation(&self) -> Option<&Violation> {
        self.violations.first()
    }

    /// Whether some violation carries exactly this axiom id.
    pub fn has(&self, axiom: &str) -> bool {
        self.violations.iter().any(|v| v.axiom == axiom)
    }

    pub fn to_text(&self) -> String {
        self.to_string()
    }

    pub fn parse(text: &str) -> Result<Self> {
        let mut lines = text.lines().enumerate().map(|(i, l)| (i + 1, l));
        let passed = match lines.next() {
            Some((_, "VERDICT pass")) => true,
            Some((_, "VERDICT fail")) => false,
            Some((no, l)) => return Err(Error::format(no, format!("bad verdict line '{l}'"))),
            None => return Err(Error::format(1, "empty report")),
        };
        let mut report = VerificationReport::default();
        for (no, line) in lines {
            if let Some(rest) = line.strip_prefix("PARAMS ") {
                let (t, r) = rest
                    .strip_prefix("t=")
                    .and_then(|x| x.split_once(" r="))
                    .ok_or_else(|| Error::format(no, "expected 'PARAMS t=<t> r=<r>'"))?;
                let parse = |x: &str| {
                    x.parse::<usize>()
                        .map_err(|_| Error::format(no, format!("bad parameter '{x}'")))
                };
                report.params = Some(Params {
                    t: parse(t)?,
                    r: parse(r)?,
                });
            } else if let Some(rest) = line.strip_prefix("VIOLATION ") {
                let mut toks = rest.split(' ');
                let axiom = toks.next().unwrap_or_default().to_string();
                let witness = toks
                    .map(|t| {
                        t.parse()
                            .map_err(|_| Error::format(no, format!("bad witness id '{t}'")))
                    })
                    .collect::<Result<Vec<usize>>>()?;
                if witness.is_empty() {
                    return Err(Error::format(no, "violation without witness"));
                }
                report.violations.push(Violation { axiom, witness });
            } else {
                return Err(Error::format(no, format!("unexpected line '{line}'")));
            }
        }
        if passed != report.violations.is_empty() {
            return Err(Error::format(1, "verdict disagrees with violation list"));
        }
        Ok(report)
    }
}

impl fmt::Display for VerificationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.passed() {
            writeln!(f, "VERDICT pass")?;
            if let Some(p) = self.params {
                writeln!(f, "PARAMS t={} r={}", p.t, p.r)?;
            }
        } else {
            writeln!(f, "VERDICT fail")?;
            for v in &self.violations {
                write!(f, "VIOLATION {}", v.axiom)?;
                for id in &v.witness {
                    write!(f, " {id}")?;
                }
                writeln!(f)?;
            }
        }
        Ok(())
    }
}
