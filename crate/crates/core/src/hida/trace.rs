use super::basis::FormSpaceBasis;
use crate::error::{Error, Result};
use crate::linalg::PMatrix;
use crate::qexp::QExpansion;

/// Trace (and optionally inclusion) between two levels, as matrices on
/// ingested bases.
#[derive(Clone, Debug)]
pub struct DegeneracyData {
    pub from_level: u64,
    pub to_level: u64,
    pub source: FormSpaceBasis,
    pub target: FormSpaceBasis,
    /// `dim target × dim source`.
    pub trace: PMatrix,
    /// `dim source × dim target`, if supplied.
    pub inclusion: Option<PMatrix>,
}

impl DegeneracyData {
    pub fn new(source: FormSpaceBasis, target: FormSpaceBasis, from_level: u64, to_level: u64, trace: PMatrix) -> Result<Self> {
        if from_level % to_level != 0 {
            return Err(Error::Precondition(format!("{to_level} does not divide {from_level}")));
        }
        if trace.rows() != target.dim() || trace.cols() != source.dim() {
            return Err(Error::Dimension(format!(
                "trace matrix is {}x{}, bases have dimensions {} and {}",
                trace.rows(),
                trace.cols(),
                target.dim(),
                source.dim()
            )));
        }
        Ok(DegeneracyData {
            from_level,
            to_level,
            source,
            target,
            trace,
            inclusion: None,
        })
    }

    pub fn with_inclusion(mut self, inclusion: PMatrix) -> Result<Self> {
        if inclusion.rows() != self.source.dim() || inclusion.cols() != self.target.dim() {
            return Err(Error::Dimension("inclusion matrix has the wrong shape".into()));
        }
        self.inclusion = Some(inclusion);
        Ok(self)
    }

    /// `[Γ(to) : Γ(from)]` times the identity should equal trace∘inclusion.
    pub fn trace_after_inclusion(&self) -> Result<PMatrix> {
        let inc = self
            .inclusion
            .as_ref()
            .ok_or_else(|| Error::Precondition("no inclusion matrix supplied".into()))?;
        self.trace.mul(inc)
    }
}

/// `Tr_{from/to}(ξ)`: identity for equal levels, otherwise the matching
/// degeneracy datum is applied.
pub fn trace_level(xi: &QExpansion, from_level: u64, to_level: u64, data: &[DegeneracyData]) -> Result<QExpansion> {
    if from_level % to_level != 0 {
        return Err(Error::Precondition(format!("{to_level} does not divide {from_level}")));
    }
    if from_level == to_level {
        return Ok(xi.clone());
    }
    let d = data
        .iter()
        .find(|d| d.from_level == from_level && d.to_level == to_level)
        .ok_or(Error::MissingDegeneracy {
            from: from_level,
            to: to_level,
        })?;
    let c = d.source.coordinates(xi)?;
    let mut out = d.target.expand(&d.trace.mul_vec(&c)?)?;
    out.level = to_level;
    Ok(out)
}
