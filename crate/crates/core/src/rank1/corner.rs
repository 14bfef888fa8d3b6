//! Transitivity of corner patterns `[[A, B], [C, D(A)]]` where `B` and `C`
//! range independently over transitive families and `D` is an entrywise
//! multiplier with no zero entry.
//!
//! For `(x; y) ≠ 0` and a target `(z₁; z₂)`: with `x, y ≠ 0` take `A = 0` and
//! pick `B y = z₁`, `C x = z₂`; with `x = 0` pick `B y = z₁`, `D(A) y = z₂`;
//! with `y = 0` pick `A x = z₁`, `C x = z₂`. So the four families `{A}`,
//! `{D(A)}`, `{B}`, `{C}` being transitive is enough.

use crate::error::Error;
use crate::exact::QMatrix;
use crate::rank1::certificate::{Certificate, CornerShape, Evidence, Verdict};
use crate::subspace::{schur, Subspace};

pub fn corner_subspace(
    shape: CornerShape,
    multiplier: &QMatrix,
    source: &Subspace,
    upper: &Subspace,
    lower: &Subspace,
) -> Subspace {
    let m = source.ambient();
    let z = QMatrix::zeros(m, m);
    let mut mats = Vec::new();
    for a in source.basis() {
        let d = schur(&a, multiplier);
        mats.push(match shape {
            CornerShape::SourceTopLeft => QMatrix::from_blocks(&a, &z, &z, &d),
            CornerShape::SourceBottomRight => QMatrix::from_blocks(&d, &z, &z, &a),
        });
    }
    for b in upper.basis() {
        mats.push(QMatrix::from_blocks(&z, &b, &z, &z));
    }
    for c in lower.basis() {
        mats.push(QMatrix::from_blocks(&z, &z, &c, &z));
    }
    Subspace::span(2 * m, &mats).expect("square blocks")
}

fn require_transitive(c: &Certificate, role: &str) -> Result<(), Error> {
    if c.verdict != Verdict::Transitive {
        return Err(Error::Certificate(format!("{role} family is not certified transitive")));
    }
    c.verify()
}

pub(crate) fn check(
    subject: &Subspace,
    shape: CornerShape,
    multiplier: &QMatrix,
    source: &Certificate,
    image: &Certificate,
    upper: &Certificate,
    lower: &Certificate,
) -> Result<(), Error> {
    for (c, role) in [(source, "source"), (image, "image"), (upper, "upper"), (lower, "lower")] {
        require_transitive(c, role)?;
    }
    let src = source.subject.space()?;
    let m = src.ambient();
    if subject.ambient() != 2 * m {
        return Err(Error::Certificate("corner blocks do not tile the subject".into()));
    }
    let img = src.schur_map(multiplier).map_err(|e| Error::Certificate(e.to_string()))?;
    if &img != image.subject.space()? {
        return Err(Error::Certificate("image family is not the multiplier image of the source".into()));
    }
    let built = corner_subspace(shape, multiplier, src, upper.subject.space()?, lower.subject.space()?);
    if &built != subject {
        return Err(Error::Certificate("subject does not match the corner pattern".into()));
    }
    Ok(())
}

pub fn corner_block_certificate(
    subject: &Subspace,
    shape: CornerShape,
    multiplier: &QMatrix,
    source: Certificate,
    image: Certificate,
    upper: Certificate,
    lower: Certificate,
) -> Result<Certificate, Error> {
    let ev = Evidence::Corner {
        shape,
        multiplier: multiplier.clone(),
        source: Box::new(source),
        image: Box::new(image),
        upper: Box::new(upper),
        lower: Box::new(lower),
    };
    let cert = Certificate::space(subject, Verdict::Transitive, "corner-block", ev);
    cert.check()?;
    Ok(cert)
}
