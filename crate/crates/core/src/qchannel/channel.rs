use crate::error::{Error, Result};
use crate::numkernel::{Complex, ComplexMatrix};
use crate::qstate::PureState;
use crate::tolerance;

/// A completely positive trace-preserving map in operator-sum form.
#[derive(Debug, Clone, PartialEq)]
pub struct KrausChannel {
    dim_in: usize,
    dim_out: usize,
    ops: Vec<ComplexMatrix>,
}

impl KrausChannel {
    /// Validates shapes and the completeness relation Σ A†A = I.
    pub fn new(ops: Vec<ComplexMatrix>) -> Result<Self> {
        let report = validate_kraus_ops(&ops)?;
        if !report.passed {
            return Err(Error::NotTracePreserving {
                residual: report.frobenius_residual,
            });
        }
        Ok(Self::from_ops_unchecked(ops))
    }

    pub(crate) fn from_ops_unchecked(ops: Vec<ComplexMatrix>) -> Self {
        let dim_in = ops[0].cols();
        let dim_out = ops[0].rows();
        Self { dim_in, dim_out, ops }
    }

    pub fn identity(d: usize) -> Self {
        Self::from_ops_unchecked(vec![ComplexMatrix::identity(d)])
    }

    pub fn dim_in(&self) -> usize {
        self.dim_in
    }

    pub fn dim_out(&self) -> usize {
        self.dim_out
    }

    pub fn ops(&self) -> &[ComplexMatrix] {
        &self.ops
    }

    pub fn rank(&self) -> usize {
        self.ops.len()
    }
}

/// ρ ↦ UρU†
#[derive(Debug, Clone, PartialEq)]
pub struct UnitaryChannel {
    u: ComplexMatrix,
    kraus: KrausChannel,
}

impl UnitaryChannel {
    pub fn new(u: ComplexMatrix) -> Result<Self> {
        u.require_square()?;
        let residual = u.unitarity_residual();
        if residual > tolerance::current().unitary {
            return Err(Error::NotUnitary { residual });
        }
        Ok(Self {
            kraus: KrausChannel::from_ops_unchecked(vec![u.clone()]),
            u,
        })
    }

    pub fn identity(d: usize) -> Self {
        Self::new(ComplexMatrix::identity(d)).expect("identity is unitary")
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.u
    }

    pub fn dim(&self) -> usize {
        self.u.rows()
    }
}

/// Measure-and-prepare map ρ ↦ Σᵢ |φᵢ⟩⟨φᵢ| ⟨ψᵢ|ρ|ψᵢ⟩.
#[derive(Debug, Clone, PartialEq)]
pub struct EbChannel {
    phis: Vec<PureState>,
    psis: Vec<Vec<Complex>>,
    kraus: KrausChannel,
}

impl EbChannel {
    /// `phis` are the prepared states, `psis` the (unnormalized) measurement
    /// vectors, which must satisfy Σ |ψᵢ⟩⟨ψᵢ| = I.
    pub fn new(phis: Vec<PureState>, psis: Vec<Vec<Complex>>) -> Result<Self> {
        let report = validate_eb_parts(&phis, &psis)?;
        if !report.passed {
            return Err(Error::IncompletePovm {
                residual: report.frobenius_residual,
            });
        }
        let ops = phis
            .iter()
            .zip(&psis)
            .map(|(phi, psi)| {
                let mut a = ComplexMatrix::zeros(phi.dim(), psi.len());
                for (r, &x) in phi.amplitudes().iter().enumerate() {
                    for (c, y) in psi.iter().enumerate() {
                        a[(r, c)] = x * y.conj();
                    }
                }
                a
            })
            .collect();
        Ok(Self {
            phis,
            psis,
            kraus: KrausChannel::from_ops_unchecked(ops),
        })
    }

    /// Projective measurement in the computational basis followed by
    /// preparation of `prepare[i]` on outcome i.
    pub fn computational(prepare: Vec<PureState>) -> Result<Self> {
        let d = prepare.len();
        let psis = (0..d).map(|i| PureState::basis(d, i).amplitudes().to_vec()).collect();
        Self::new(prepare, psis)
    }

    pub fn phis(&self) -> &[PureState] {
        &self.phis
    }

    pub fn psis(&self) -> &[Vec<Complex>] {
        &self.psis
    }
}

/// Anything with a Kraus representation.
pub trait CptMap {
    fn kraus(&self) -> &KrausChannel;

    fn dim_in(&self) -> usize {
        self.kraus().dim_in()
    }

    fn dim_out(&self) -> usize {
        self.kraus().dim_out()
    }
}

impl CptMap for KrausChannel {
    fn kraus(&self) -> &KrausChannel {
        self
    }
}

impl CptMap for UnitaryChannel {
    fn kraus(&self) -> &KrausChannel {
        &self.kraus
    }
}

impl CptMap for EbChannel {
    fn kraus(&self) -> &KrausChannel {
        &self.kraus
    }
}

/// A channel in any of its constructed forms. Every variant lowers to Kraus
/// form for application; the original data stays available for closed forms.
#[derive(Debug, Clone, PartialEq)]
pub enum Channel {
    Kraus(KrausChannel),
    Unitary(UnitaryChannel),
    EntanglementBreaking(EbChannel),
}

impl Channel {
    pub fn as_unitary(&self) -> Option<&UnitaryChannel> {
        match self {
            Channel::Unitary(u) => Some(u),
            _ => None,
        }
    }

    pub fn kind(&self) -> &'static str {
        match self {
            Channel::Kraus(_) => "kraus",
            Channel::Unitary(_) => "unitary",
            Channel::EntanglementBreaking(_) => "eb",
        }
    }
}

impl CptMap for Channel {
    fn kraus(&self) -> &KrausChannel {
        match self {
            Channel::Kraus(k) => k,
            Channel::Unitary(u) => &u.kraus,
            Channel::EntanglementBreaking(e) => &e.kraus,
        }
    }
}

impl From<KrausChannel> for Channel {
    fn from(k: KrausChannel) -> Self {
        Channel::Kraus(k)
    }
}

impl From<UnitaryChannel> for Channel {
    fn from(u: UnitaryChannel) -> Self {
        Channel::Unitary(u)
    }
}

impl From<EbChannel> for Channel {
    fn from(e: EbChannel) -> Self {
        Channel::EntanglementBreaking(e)
    }
}

/// Outcome of a completeness check.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ValidationReport {
    pub passed: bool,
    /// Largest entry of |I − Σ A†A| (or of |I − Σ ψψ†| for measurement vectors).
    pub max_residual: f64,
    /// Frobenius norm of the same difference; compared against the threshold.
    pub frobenius_residual: f64,
}

fn completeness_report(sum: &ComplexMatrix) -> ValidationReport {
    let diff = &ComplexMatrix::identity(sum.rows()) - sum;
    let frobenius_residual = diff.frobenius_norm();
    ValidationReport {
        passed: frobenius_residual <= tolerance::current().completeness,
        max_residual: diff.max_abs(),
        frobenius_residual,
    }
}

/// Checks Σ A†A = I for a raw operator set. Shape errors are reported as `Err`.
pub fn validate_kraus_ops(ops: &[ComplexMatrix]) -> Result<ValidationReport> {
    let first = ops.first().ok_or(Error::EmptyEnsemble)?;
    let (rows, cols) = (first.rows(), first.cols());
    let mut sum = ComplexMatrix::zeros(cols, cols);
    for a in ops {
        if a.rows() != rows || a.cols() != cols {
            return Err(Error::InvalidShape(format!(
                "Kraus operator {}x{} in a {rows}x{cols} set",
                a.rows(),
                a.cols()
            )));
        }
        sum = &sum + &a.adjoint().matmul(a);
    }
    Ok(completeness_report(&sum))
}

/// Checks Σ|ψᵢ⟩⟨ψᵢ| = I and matching lengths for measure-and-prepare data.
pub fn validate_eb_parts(phis: &[PureState], psis: &[Vec<Complex>]) -> Result<ValidationReport> {
    if phis.len() != psis.len() {
        return Err(Error::DimensionMismatch {
            expected: phis.len(),
            found: psis.len(),
        });
    }
    let first = psis.first().ok_or(Error::EmptyEnsemble)?;
    let d_in = first.len();
    let d_out = phis[0].dim();
    if let Some(bad) = psis.iter().find(|p| p.len() != d_in) {
        return Err(Error::DimensionMismatch {
            expected: d_in,
            found: bad.len(),
        });
    }
    if let Some(bad) = phis.iter().find(|p| p.dim() != d_out) {
        return Err(Error::DimensionMismatch {
            expected: d_out,
            found: bad.dim(),
        });
    }
    let mut sum = ComplexMatrix::zeros(d_in, d_in);
    for psi in psis {
        sum = &sum + &ComplexMatrix::outer(psi);
    }
    Ok(completeness_report(&sum))
}

/// Completeness report for any channel.
pub fn validate(ch: &impl CptMap) -> ValidationReport {
    validate_kraus_ops(ch.kraus().ops()).expect("channel holds a well-shaped Kraus set")
}
