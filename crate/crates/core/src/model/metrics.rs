use serde::Serialize;

use super::CodeFacts;

/// Size metrics of a codebase, in the shape of the usual NOP/NOC/NOA/NOM
/// table.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize)]
pub struct SoftwareMetrics {
    pub nop: usize,
    pub noc: usize,
    pub noa: usize,
    pub nom: usize,
    /// Classes + attributes + methods + parameters + locals.
    pub identifiers: usize,
    pub comments: usize,
    pub locals: usize,
    pub invocations: usize,
    pub accesses: usize,
}

pub fn compute_metrics(facts: &CodeFacts) -> SoftwareMetrics {
    let mut m = SoftwareMetrics {
        nop: facts.packages.len(),
        ..Default::default()
    };
    let mut parameters = 0;
    for (_, class) in facts.classes() {
        m.noc += 1;
        m.noa += class.attributes.len();
        m.nom += class.methods.len();
        m.comments += class.comments.len();
        for method in &class.methods {
            parameters += method.parameters.len();
            m.locals += method.local_variables.len();
            m.comments += method.comments.len();
            m.invocations += method.method_invocations.len();
            m.accesses += method.attribute_accesses.len();
        }
    }
    m.identifiers = m.noc + m.noa + m.nom + parameters + m.locals;
    m
}

impl std::fmt::Display for SoftwareMetrics {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        writeln!(f, "NOP  packages            {}", self.nop)?;
        writeln!(f, "NOC  classes             {}", self.noc)?;
        writeln!(f, "NOA  attributes          {}", self.noa)?;
        writeln!(f, "NOM  methods             {}", self.nom)?;
        writeln!(f, "NOI  identifiers         {}", self.identifiers)?;
        writeln!(f, "NOO  comments            {}", self.comments)?;
        writeln!(f, "NOL  local variables     {}", self.locals)?;
        writeln!(f, "NOI  method invocations  {}", self.invocations)?;
        write!(f, "NOE  attribute accesses  {}", self.accesses)
    }
}
