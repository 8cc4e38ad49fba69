use interlink::bridge::{to_link, BridgeError};
use interlink::examples::algebra::{
    check_action, check_group, check_inverse_semigroup, check_monoid, FinGroup,
    FinInverseSemigroup, GroupAction,
};
use interlink::examples::links::{
    cech, from_group, from_group_action, from_inverse_semigroup, from_involutive_magma,
    from_relation_action, RelationAction,
};
use interlink::examples::ExampleError;
use interlink::groupoid::validate_groupoid;
use interlink::inv2link::{validate_link, Inv2Link};
use interlink::report::{Outcome, Report};

use crate::model::Structure;

/// Why a structure could not be turned into a link.
#[derive(Debug)]
pub enum Unusable {
    /// Laws failed; the report says which.
    Invalid(Report),
    Other(String),
}

impl std::fmt::Display for Unusable {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Unusable::Invalid(r) => write!(f, "{r}"),
            Unusable::Other(msg) => writeln!(f, "{msg}"),
        }
    }
}

fn example(e: ExampleError) -> Unusable {
    match e {
        ExampleError::Invalid { report, .. } => Unusable::Invalid(report),
        other => Unusable::Other(other.to_string()),
    }
}

fn gate(report: Report) -> Result<(), Unusable> {
    if report.passed() {
        Ok(())
    } else {
        Err(Unusable::Invalid(report))
    }
}

/// Checks the laws of the input, then validates the link it presents.
pub fn validate(s: &Structure) -> Result<Report, String> {
    let mut report = match s {
        Structure::Link(raw) => {
            return validate_link(raw)
                .map(|r| r.to_report())
                .map_err(|e| e.to_string())
        }
        Structure::Groupoid(g) => return validate_groupoid(g).map_err(|e| e.to_string()),
        Structure::Monoid { carrier, op } => return Ok(check_monoid(carrier, op)),
        Structure::Group { carrier, op } => check_group(carrier, op),
        Structure::InverseSemigroup { carrier, op, inv } => {
            check_inverse_semigroup(carrier, op, inv)
        }
        Structure::Action {
            group,
            op,
            carrier,
            act,
        } => {
            let mut r = check_group(group, op);
            if r.passed() {
                let g = FinGroup::new(group.clone(), op.clone()).map_err(|e| e.to_string())?;
                r.extend(check_action(&g, carrier, act));
            }
            r
        }
        Structure::RelationAction {
            s: carrier,
            op,
            inv,
            x,
            b,
            g,
            act,
            r,
        } => {
            let mut report = check_inverse_semigroup(carrier, op, inv);
            if report.passed() {
                let s = FinInverseSemigroup::new(carrier.clone(), op.clone(), inv.clone())
                    .map_err(|e| e.to_string())?;
                let input = RelationAction {
                    s: &s,
                    x,
                    b,
                    g,
                    phi: act,
                    r,
                };
                report.extend(input.check().map_err(|e| e.to_string())?);
            }
            report
        }
        Structure::Cover(_) | Structure::Magma { .. } => Report::new(),
    };
    if !report.passed() {
        return Ok(report);
    }
    match link_of(s) {
        Ok(link) => report.extend(
            validate_link(&link.raw())
                .map_err(|e| e.to_string())?
                .to_report(),
        ),
        Err(Unusable::Invalid(r)) => report.extend(r),
        Err(Unusable::Other(msg)) => return Err(msg),
    }
    Ok(report)
}

/// The link an input presents.
pub fn link_of(s: &Structure) -> Result<Inv2Link, Unusable> {
    match s {
        Structure::Link(raw) => {
            let v = validate_link(raw).map_err(|e| Unusable::Other(e.to_string()))?;
            gate(v.to_report())?;
            Inv2Link::try_from(raw.clone()).map_err(|e| Unusable::Other(e.to_string()))
        }
        Structure::Groupoid(g) => to_link(g).map_err(|e| match e {
            BridgeError::InvalidGroupoid(r) => Unusable::Invalid(r),
            other => Unusable::Other(other.to_string()),
        }),
        Structure::Group { carrier, op } => {
            gate(check_group(carrier, op))?;
            Ok(from_group(
                &FinGroup::new(carrier.clone(), op.clone()).map_err(example)?,
            ))
        }
        Structure::Monoid { .. } => Err(Unusable::Other(
            "a monoid on its own presents no link".into(),
        )),
        Structure::InverseSemigroup { carrier, op, inv } => {
            let s = FinInverseSemigroup::new(carrier.clone(), op.clone(), inv.clone())
                .map_err(example)?;
            Ok(from_inverse_semigroup(&s))
        }
        Structure::Cover(cover) => cech(cover).map_err(example),
        Structure::Action {
            group,
            op,
            carrier,
            act,
        } => {
            gate(check_group(group, op))?;
            let g = FinGroup::new(group.clone(), op.clone()).map_err(example)?;
            let a = GroupAction::new(g, carrier.clone(), act.clone()).map_err(example)?;
            Ok(from_group_action(&a))
        }
        Structure::RelationAction {
            s,
            op,
            inv,
            x,
            b,
            g,
            act,
            r,
        } => {
            let s =
                FinInverseSemigroup::new(s.clone(), op.clone(), inv.clone()).map_err(example)?;
            let input = RelationAction {
                s: &s,
                x,
                b,
                g,
                phi: act,
                r,
            };
            let laws = input.check().map_err(example)?;
            gate(laws)?;
            from_relation_action(&input).map_err(example)
        }
        Structure::Magma { carrier, op, inv } => {
            match from_involutive_magma(carrier, op, inv).map_err(example)? {
                Ok(link) => Ok(link),
                Err(failure) => {
                    let mut r = Report::new();
                    let (x, y) = failure.pair;
                    r.push(
                        "cancellation",
                        Outcome::fail(
                            format!("({},{})", carrier.name(x), carrier.name(y)),
                            format!("{} fails", failure.condition),
                        ),
                    );
                    Err(Unusable::Invalid(r))
                }
            }
        }
    }
}
