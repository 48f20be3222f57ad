use std::fmt;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CertificateKind {
    Admissibility,
    Entropy,
    Injectivity,
    Stage,
}

impl fmt::Display for CertificateKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            CertificateKind::Admissibility => "admissibility",
            CertificateKind::Entropy => "entropy",
            CertificateKind::Injectivity => "injectivity",
            CertificateKind::Stage => "stage",
        };
        f.write_str(s)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Check {
    pub id: String,
    pub pass: bool,
    /// Evidence: the computed quantities on pass, a counterexample on fail.
    pub witness: String,
}

/// Pass/fail record; passes iff every check passes.
#[derive(Clone, Debug, PartialEq)]
pub struct Certificate {
    pub kind: CertificateKind,
    pub checks: Vec<Check>,
    pub parameters: Vec<(String, String)>,
}

impl Certificate {
    pub fn new(kind: CertificateKind) -> Self {
        Certificate {
            kind,
            checks: Vec::new(),
            parameters: Vec::new(),
        }
    }

    pub fn param(&mut self, key: &str, value: impl fmt::Display) {
        self.parameters.push((key.to_string(), value.to_string()));
    }

    pub fn check(&mut self, id: &str, pass: bool, witness: impl Into<String>) {
        self.checks.push(Check {
            id: id.to_string(),
            pass,
            witness: witness.into(),
        });
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    pub fn get(&self, id: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.id == id)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.pass)
    }
}

impl fmt::Display for Certificate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "certificate {} {}",
            self.kind,
            if self.passed() { "PASS" } else { "FAIL" }
        )?;
        for (k, v) in &self.parameters {
            writeln!(f, "  param {k} = {v}")?;
        }
        for c in &self.checks {
            writeln!(
                f,
                "  check {} {} {}",
                c.id,
                if c.pass { "pass" } else { "FAIL" },
                c.witness
            )?;
        }
        Ok(())
    }
}
