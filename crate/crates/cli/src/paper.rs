//! The shipped worked examples, recomputed from their data files.

use std::fmt::Write as _;

use quiverlab_core::cluster::depth1_upper_report;
use quiverlab_core::obstructions::checker::{check_la_certificate, check_no_mgs_certificate};
use quiverlab_core::obstructions::LaNode;
use quiverlab_core::{
    class_no_mgs_certificate, column_gcds, data, degree, enumerate_class, grading_check,
    is_coprime_matrix, local_acyclicity_certificate, multiple_arrow_cycle, no_mgs_certificate,
    parse_laurent, search_mgs, verify_green_to_red, CertificateCaps, ClassCaps, Degree,
    GradingVector, IceQuiver, MutationSequence, NoMgsCertificate, SearchOptions, SearchOutcome,
};
use serde::Serialize;

use crate::cli::Case;

/// The element of the X7 upper cluster algebra examined by the `x7` case.
pub const X7_ELEMENT: &str = "(y2*y3*x2^2 + x3^2 + y2*x1)/(x1*x2)";

/// The green-to-red sequence replayed by the `qce` case.
pub const QCE_SEQUENCE: &str = "1,4,3,4,2,4";

#[derive(Debug, Clone, Serialize)]
pub struct Verdict {
    pub name: String,
    pub holds: bool,
    pub detail: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct Reproduction {
    pub case: &'static str,
    pub verdicts: Vec<Verdict>,
    pub all_hold: bool,
}

impl Reproduction {
    fn new(case: &'static str, verdicts: Vec<Verdict>) -> Self {
        let all_hold = verdicts.iter().all(|v| v.holds);
        Self {
            case,
            verdicts,
            all_hold,
        }
    }

    pub fn text(&self) -> String {
        let mut t = String::new();
        for v in &self.verdicts {
            let _ = writeln!(
                t,
                "{} {}: {}",
                if v.holds { "PASS" } else { "FAIL" },
                v.name,
                v.detail
            );
        }
        let failed = self.verdicts.iter().filter(|v| !v.holds).count();
        let _ = write!(t, "{}: {} of {} hold", self.case, self.verdicts.len() - failed, self.verdicts.len());
        t
    }
}

fn verdict(name: &str, holds: bool, detail: String) -> Verdict {
    Verdict {
        name: name.into(),
        holds,
        detail,
    }
}

fn checked_certificate(
    name: &str,
    b: &quiverlab_core::ExchangeMatrix,
    cert: Option<NoMgsCertificate>,
) -> Verdict {
    match cert {
        Some(c) => {
            let ok = check_no_mgs_certificate(b, &c).is_ok();
            verdict(
                name,
                ok,
                format!("{}; checker {}", crate::commands::certificate_text(&c), if ok { "accepted" } else { "rejected" }),
            )
        }
        None => verdict(name, false, "no certificate found".into()),
    }
}

pub fn reproduce(case: Case) -> Reproduction {
    match case {
        Case::Qce => qce(),
        Case::X7 => x7(),
        Case::Markov => markov(),
    }
}

fn qce() -> Reproduction {
    let b = data::qce();
    let mut verdicts = vec![checked_certificate("no-MGS certificate", &b, no_mgs_certificate(&b))];

    let q = IceQuiver::from_principal(b.clone());
    let la = local_acyclicity_certificate(&q, CertificateCaps::default());
    verdicts.push(match la.certificate() {
        Some(cert) => {
            let ok = check_la_certificate(&q, cert).is_ok();
            let detail = match &cert.root {
                LaNode::Split { arrow, freeze_source, freeze_target, .. } => format!(
                    "covering pair {}->{}; freezing {} leaves an acyclic quiver after {} mutations, freezing {} after {}; {} leaves; checker {}",
                    arrow.0 + 1,
                    arrow.1 + 1,
                    arrow.1 + 1,
                    freeze_target.sequence().len(),
                    arrow.0 + 1,
                    freeze_source.sequence().len(),
                    cert.root.leaf_count(),
                    if ok { "accepted" } else { "rejected" }
                ),
                LaNode::Leaf { .. } => "acyclic seed".into(),
            };
            verdict("local-acyclicity certificate", ok, detail)
        }
        None => verdict("local-acyclicity certificate", false, "none found".into()),
    });

    let seq: MutationSequence = QCE_SEQUENCE.parse().expect("constant sequence");
    let g2r = verify_green_to_red(&b, &seq).unwrap_or(false);
    verdicts.push(verdict(
        "green-to-red sequence",
        g2r,
        format!("{QCE_SEQUENCE} from the framed quiver ends with every vertex red: {g2r}"),
    ));

    verdicts.push(checked_certificate(
        "class-level no-MGS certificate",
        &b,
        class_no_mgs_certificate(&b),
    ));
    Reproduction::new("qce", verdicts)
}

fn x7() -> Reproduction {
    let (b1, b2) = (data::x7_b1(), data::x7_b2());
    let mut verdicts = Vec::new();

    let class = enumerate_class(&b1, ClassCaps::default());
    verdicts.push(match class {
        Ok(class) => {
            let has_b2 = class.contains(&b2).unwrap_or(false);
            verdict(
                "mutation class",
                class.complete && class.len() == 2 && has_b2,
                format!("{} quivers (complete: {}), contains B2: {has_b2}", class.len(), class.complete),
            )
        }
        Err(e) => verdict("mutation class", false, e.to_string()),
    });

    let c1 = is_coprime_matrix(&IceQuiver::from_principal(b1.clone()));
    let c2 = is_coprime_matrix(&IceQuiver::from_principal(b2));
    verdicts.push(verdict("coprime", c1 && c2, format!("B1: {c1}, B2: {c2}")));

    let gcds = column_gcds(&b1);
    verdicts.push(verdict(
        "column gcds",
        gcds.iter().all(|&g| g == 1),
        format!("{gcds:?}"),
    ));

    let z = parse_laurent(X7_ELEMENT, 7, 7).expect("constant polynomial parses");
    let report = depth1_upper_report(&z, &b1);
    let failing: Vec<String> = report
        .failures
        .iter()
        .map(|f| format!("{} (power {})", f.direction + 1, f.power))
        .collect();
    verdicts.push(verdict(
        "Z in every adjacent Laurent ring",
        report.member(),
        if report.member() {
            format!("{X7_ELEMENT} passes all 7 directions")
        } else {
            format!("{X7_ELEMENT} fails in direction {}", failing.join(", "))
        },
    ));

    let d = GradingVector(vec![2, 1, 1, 1, 1, 1, 1]);
    let valid = grading_check(&b1, &d);
    verdicts.push(verdict("grading (2,1,1,1,1,1,1)", valid, format!("valid: {valid}")));
    let deg = degree(&z, &d);
    verdicts.push(match deg {
        Degree::Homogeneous { degree } => verdict(
            "deg(Z) <= 0",
            degree <= 0,
            format!("homogeneous of degree {degree}"),
        ),
        Degree::NotHomogeneous => verdict("deg(Z) <= 0", false, "not homogeneous".into()),
    });
    Reproduction::new("x7", verdicts)
}

fn markov() -> Reproduction {
    let b = data::markov();
    let cycle = multiple_arrow_cycle(&b);
    let mut verdicts = vec![verdict(
        "oriented cycle of multiple arrows",
        cycle.as_deref() == Some(&[0, 1, 2][..]),
        match &cycle {
            Some(c) => format!("{:?}", c.iter().map(|v| v + 1).collect::<Vec<_>>()),
            None => "none".into(),
        },
    )];
    let out = search_mgs(&b, 6, &SearchOptions::default());
    verdicts.push(match out {
        Ok(SearchOutcome::Obstructed { certificate }) => verdict(
            "maximal green sequence search",
            true,
            format!("obstructed: {}", crate::commands::certificate_text(&certificate)),
        ),
        Ok(other) => verdict("maximal green sequence search", false, crate::commands::search_text(&other)),
        Err(e) => verdict("maximal green sequence search", false, e.to_string()),
    });
    Reproduction::new("markov", verdicts)
}
