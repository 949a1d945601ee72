//! Three-valued check outcomes.

use serde::Serialize;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Status {
    /// Holds identically (exact symbolic zero, or constant data).
    Verified,
    /// Holds at every listed sample point; not provable globally here.
    SampleVerified { points: usize },
    /// Fails; the witness reproduces the failure.
    Failed { witness: String },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Verdict {
    pub status: Status,
    pub detail: String,
}

impl Verdict {
    pub fn verified(detail: impl Into<String>) -> Self {
        Verdict { status: Status::Verified, detail: detail.into() }
    }

    pub fn sample_verified(points: usize, detail: impl Into<String>) -> Self {
        Verdict { status: Status::SampleVerified { points }, detail: detail.into() }
    }

    pub fn failed(witness: impl Into<String>, detail: impl Into<String>) -> Self {
        Verdict { status: Status::Failed { witness: witness.into() }, detail: detail.into() }
    }

    /// `Verified` when `ok`, otherwise `Failed` with the witness produced lazily.
    pub fn check(ok: bool, detail: impl Into<String>, witness: impl FnOnce() -> String) -> Self {
        if ok {
            Verdict::verified(detail)
        } else {
            Verdict::failed(witness(), detail)
        }
    }

    pub fn is_verified(&self) -> bool {
        matches!(self.status, Status::Verified)
    }

    pub fn is_failed(&self) -> bool {
        matches!(self.status, Status::Failed { .. })
    }

    /// Verified or SampleVerified.
    pub fn passed(&self) -> bool {
        !self.is_failed()
    }

    pub fn witness(&self) -> Option<&str> {
        match &self.status {
            Status::Failed { witness } => Some(witness),
            _ => None,
        }
    }

    pub fn status_name(&self) -> &'static str {
        match self.status {
            Status::Verified => "Verified",
            Status::SampleVerified { .. } => "SampleVerified",
            Status::Failed { .. } => "Failed",
        }
    }

    /// Combine several verdicts into one: the weakest status wins and the
    /// first failure supplies the witness.
    pub fn all<'a>(detail: impl Into<String>, parts: impl IntoIterator<Item = &'a Verdict>) -> Verdict {
        let mut sample = None;
        for p in parts {
            match &p.status {
                Status::Failed { witness } => return Verdict::failed(witness.clone(), format!("{}: {}", detail.into(), p.detail)),
                Status::SampleVerified { points } => sample = Some(*points),
                Status::Verified => {}
            }
        }
        match sample {
            Some(points) => Verdict::sample_verified(points, detail),
            None => Verdict::verified(detail),
        }
    }
}

#[derive(Serialize)]
pub(crate) struct VerdictJson<'a> {
    pub status: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub points: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<&'a str>,
    pub detail: &'a str,
}

impl Serialize for Verdict {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let points = match self.status {
            Status::SampleVerified { points } => Some(points),
            _ => None,
        };
        VerdictJson { status: self.status_name(), points, witness: self.witness(), detail: &self.detail }.serialize(s)
    }
}
