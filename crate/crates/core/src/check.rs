use serde::Serialize;

/// Outcome of one named property check.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PropertyCheck {
    pub property: char,
    pub pass: bool,
    /// Why the property fails, naming the offending set or point.
    pub witness: Option<String>,
}

impl PropertyCheck {
    pub fn verdict(property: char, witness: Option<String>) -> Self {
        PropertyCheck {
            property,
            pass: witness.is_none(),
            witness,
        }
    }
}

/// Property checks for one round.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RoundReport {
    pub round: u32,
    pub checks: Vec<PropertyCheck>,
}

impl RoundReport {
    pub fn all_pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    pub fn failures(&self) -> impl Iterator<Item = &PropertyCheck> {
        self.checks.iter().filter(|c| !c.pass)
    }

    pub fn get(&self, property: char) -> Option<&PropertyCheck> {
        self.checks.iter().find(|c| c.property == property)
    }
}
