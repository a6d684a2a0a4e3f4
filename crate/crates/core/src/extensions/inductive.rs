use super::{ExtensionCertificate, ExtensionKind, ExtensionRegistry};
use crate::error::{Error, Result};
use crate::io::{AlgebraData, ExtensionSpec};

/// Result of a chain of extensions, with the certificate of every step.
#[derive(Clone, Debug)]
pub struct InductiveBuild {
    pub result: AlgebraData,
    pub certificates: Vec<ExtensionCertificate>,
}

/// Applies an elementary odd extension to a Lie algebra, then a sequence of
/// generalized double extensions.
pub fn inductive_build(base: &AlgebraData, steps: &[ExtensionSpec]) -> Result<InductiveBuild> {
    let registry = ExtensionRegistry::standard();
    let mut current = base.clone();
    let mut certificates = Vec::with_capacity(steps.len());
    for (k, spec) in steps.iter().enumerate() {
        let expected = if k == 0 { ExtensionKind::ElemOdd } else { ExtensionKind::Gde };
        if spec.kind != expected.as_str() {
            return Err(Error::Schema(format!("step {k} must be {}, got {}", expected.as_str(), spec.kind)));
        }
        let cert = registry.apply(&current, spec)?;
        current = cert.result.clone();
        certificates.push(cert);
    }
    Ok(InductiveBuild { result: current, certificates })
}
