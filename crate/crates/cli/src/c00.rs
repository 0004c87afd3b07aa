//! Symbolic support nests on `c00`.

use nestalg::support::{
    chain_union, dual_complete_check, dual_support_nest, verify_witness, IncompletenessWitness, IndexRange, Label,
    TailFunctional,
};
use nestalg::{Rational, Scalar, SupportNest};
use serde_json::{json, Map, Value};

use crate::input::InputResult;
use crate::report::Verdict;

fn lib<T>(r: nestalg::Result<T>) -> InputResult<T> {
    r.map_err(|e| e.to_string())
}

/// Labels shown when listing members.
fn sample_labels(nest: &SupportNest) -> Vec<Label> {
    let indices: Vec<i64> = if nest.is_valid_label(Label::Index(0)) { (-2..=2).collect() } else { (1..=3).collect() };
    std::iter::once(Label::Bottom)
        .chain(indices.into_iter().map(Label::Index))
        .chain(std::iter::once(Label::Top))
        .collect()
}

fn describe(nest: &SupportNest) -> InputResult<Value> {
    let mut members = Map::new();
    for l in sample_labels(nest) {
        let sets: Vec<String> = lib(nest.member(l))?.iter().map(|s| s.to_string()).collect();
        members.insert(l.to_string(), json!(sets));
    }
    Ok(json!({
        "name": nest.name(),
        "side": nest.side().to_string(),
        "blocks": nest.blocks(),
        "order_type": format!("{:?}", nest.order_type()),
        "well_ordered": nest.is_well_ordered(),
        "acc": nest.satisfies_acc(),
        "complete": nest.is_complete(),
        "members": members,
    }))
}

fn functional_json<S: Scalar>(f: &TailFunctional<S>) -> Value {
    let exceptional: Map<String, Value> = f.exceptional.iter().map(|(k, v)| (k.to_string(), v.to_json())).collect();
    json!({ "exceptional": exceptional, "tail_value": f.tail_value.to_json() })
}

fn witness_json<S: Scalar>(w: &IncompletenessWitness<S>) -> Value {
    json!({
        "run": (1..=3).map(|n| w.run_label(n).to_string()).chain(std::iter::once("...".to_string())).collect::<Vec<_>>(),
        "limit": w.limit.to_string(),
        "block": w.block,
        "functional": w.functional.iter().map(functional_json).collect::<Vec<_>>(),
        "transversal": "x_n = e_{n+1}",
    })
}

fn ranges(nest: &SupportNest) -> Vec<IndexRange> {
    if nest.is_valid_label(Label::Index(0)) {
        vec![IndexRange::all(), IndexRange::from(1), IndexRange::up_to(-1), IndexRange::between(-2, 3)]
    } else {
        vec![IndexRange::all(), IndexRange::from(2), IndexRange::up_to(3), IndexRange::between(1, 4)]
    }
}

fn range_json(r: IndexRange) -> Value {
    json!({ "start": r.start, "end": r.end })
}

/// Report payload and verdicts for one catalog nest.
pub fn analyze(name: &str) -> InputResult<(Value, Vec<Verdict>)> {
    let nest = lib(SupportNest::by_name(name))?;
    let d = lib(dual_support_nest::<Rational>(&nest))?;
    let mut verdicts = Vec::new();
    let prefix = |p: &str| format!("{name}: {p}");

    verdicts.push(Verdict::with_witness(
        prefix("dual is complete iff the nest is well-ordered"),
        d.complete == nest.is_well_ordered(),
        json!({ "complete": d.complete, "well_ordered": nest.is_well_ordered() }),
    ));
    verdicts
        .push(Verdict::new(prefix("preannihilator of the dual is the nest"), lib(d.dual.preannihilator())? == nest));

    let witness = match &d.witness {
        Some(w) => {
            let check = lib(verify_witness(&nest, w))?;
            verdicts.push(Verdict::with_witness(
                prefix("witness lies in the limit annihilator and outside every run annihilator"),
                check.passes(),
                serde_json::to_value(check).expect("serializable"),
            ));
            json!({ "functional": witness_json(w), "check": check })
        }
        None => {
            verdicts.push(Verdict::new(prefix("complete dual needs no witness"), d.complete));
            Value::Null
        }
    };

    let mut checks = Vec::new();
    let mut meet_ok = true;
    for r in ranges(&nest) {
        let c = lib(dual_complete_check(&nest, r))?;
        meet_ok &= c.meet_identity && c.union_contained;
        let union = lib(chain_union(&nest, r))?;
        checks.push(json!({
            "range": range_json(r),
            "meet_identity": c.meet_identity,
            "union_contained": c.union_contained,
            "union_equal": c.union_equal,
            "union": union.union.iter().map(|s| s.to_string()).collect::<Vec<_>>(),
            "union_member": union.member.map(|l| l.to_string()),
        }));
    }
    verdicts.push(Verdict::new(
        prefix("meet of annihilators is the annihilator of the union, and unions of annihilators are contained"),
        meet_ok,
    ));

    let payload = json!({
        "nest": describe(&nest)?,
        "dual": describe(&d.dual)?,
        "dual_complete": d.complete,
        "witness": witness,
        "range_checks": checks,
    });
    Ok((payload, verdicts))
}

pub fn catalog_names() -> Vec<&'static str> {
    SupportNest::catalog().into_iter().map(|(n, _)| n).collect()
}
