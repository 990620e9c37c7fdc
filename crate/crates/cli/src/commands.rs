use serde::Serialize;

use valprime::ap::{ap_free_max, class_ap_scan, find_kap, APWitness, MemberSet};
use valprime::arith::rational::serde_str;
use valprime::arith::Rational;
use valprime::classes::{
    class_representative, decompose, exponent_class, partition_classes, ExponentClass,
};
use valprime::pipeline::{run_pipeline, PipelineReport};
use valprime::places::{
    absolute_value, euclid_witness, product_formula_terms, valuation, weak_approximate, Place,
    PlaceValue, Valuation,
};
use valprime::powers::{
    square_3ap_search, verify_no_4_square_ap, verify_no_cube_ap, verify_no_power_ap,
    VerificationReport,
};
use valprime::smooth::{
    density_profile, erdos_defect_bound, erdos_defect_scan, minimal_r_for_tail,
    prime_reciprocal_partial_sum, prime_reciprocal_sum_bounds, smooth_members, tail_reciprocal_sum,
};
use valprime::{factorize, primes_up_to, Error, Factorization, Limits};

use crate::output::{aligned, fields, join, vector, Output};
use crate::{q, Command, Format, Reply};

#[derive(Serialize)]
struct PrimesOut {
    bound: u64,
    count: u64,
    primes: Vec<u64>,
}

#[derive(Serialize)]
struct FactorOut {
    n: u64,
    factorization: Factorization,
}

#[derive(Serialize)]
struct ValuationOut {
    #[serde(with = "serde_str")]
    q: Rational,
    p: u64,
    valuation: Valuation,
}

#[derive(Serialize)]
struct AbsvalOut {
    #[serde(with = "serde_str")]
    q: Rational,
    place: Place,
    #[serde(with = "serde_str")]
    value: Rational,
}

#[derive(Serialize)]
struct ProductOut {
    #[serde(with = "serde_str")]
    q: Rational,
    terms: Vec<PlaceValue>,
    #[serde(with = "serde_str")]
    product: Rational,
}

#[derive(Serialize)]
struct TailOut {
    r: usize,
    bound: u64,
    #[serde(with = "serde_str")]
    tail: Rational,
}

#[derive(Serialize)]
struct MinimalROut {
    bound: u64,
    #[serde(with = "serde_str")]
    theta: Rational,
    r: usize,
}

#[derive(Serialize)]
struct ExactSumOut {
    bound: u64,
    #[serde(with = "serde_str")]
    sum: Rational,
}

#[derive(Serialize)]
struct ClassifyOut {
    n: u64,
    class: ExponentClass,
    representative: u64,
}

#[derive(Serialize)]
struct FindApOut {
    size: u64,
    k: u32,
    witness: Option<APWitness>,
}

fn ap_row(w: &APWitness) -> Vec<String> {
    vec![w.a.to_string(), w.d.to_string(), w.k.to_string()]
}

fn verification(rep: &VerificationReport) -> Output {
    let roots: Vec<String> = rep
        .counterexamples
        .iter()
        .map(|c| format!("[{}]", join(c, ",")))
        .collect();
    let rows = rep
        .counterexamples
        .iter()
        .map(|c| {
            vec![
                rep.statement.to_string(),
                rep.bound.to_string(),
                join(c, " "),
            ]
        })
        .collect();
    Output::new(rep)
        .rows(&["statement", "bound", "roots"], rows)
        .table(
            fields(&[
                ("statement", rep.statement.to_string()),
                ("bound", rep.bound.to_string()),
                ("triples_checked", rep.triples_checked.to_string()),
                ("counterexamples", rep.counterexamples.len().to_string()),
                ("holds", rep.holds().to_string()),
            ]) + &roots.iter().map(|r| format!("  {r}\n")).collect::<String>(),
        )
}

pub fn pipeline_output(rep: &PipelineReport) -> Output {
    let rows = rep
        .witnesses
        .iter()
        .map(|w| {
            vec![
                vector(&w.v),
                w.witness.a.to_string(),
                w.witness.d.to_string(),
                w.witness.k.to_string(),
                w.representative.to_string(),
                join(&w.powers.iter().map(|p| p.1).collect::<Vec<_>>(), " "),
            ]
        })
        .collect();
    let mut text = fields(&[
        ("route", rep.route.to_string()),
        ("m", rep.m.to_string()),
        ("k", rep.k.to_string()),
        ("r", rep.r.to_string()),
        ("N", rep.n.to_string()),
        ("smooth_count", rep.smooth_count.to_string()),
        ("possible_classes", rep.possible_classes.to_string()),
        ("nonempty_classes", rep.nonempty_classes.to_string()),
        (
            "densest",
            format!("{} x{}", vector(&rep.densest.v), rep.densest.count),
        ),
        ("witnesses", rep.witnesses.len().to_string()),
        ("verdict", format!("{:?}", rep.verdict)),
    ]);
    for w in &rep.witnesses {
        let terms: Vec<u64> = w.witness.terms().collect();
        let roots: Vec<u64> = w.powers.iter().map(|p| p.1).collect();
        text.push_str(&format!(
            "  {} terms {} = {} * ({})^{}\n",
            vector(&w.v),
            join(&terms, ","),
            w.representative,
            join(&roots, ","),
            rep.m
        ));
    }
    Output::new(rep)
        .rows(&["v", "a", "d", "k", "representative", "roots"], rows)
        .table(text)
}

fn holds_unless(out: Output, format: Format, failed: bool) -> Reply {
    Reply {
        text: out.render(format),
        contradiction: failed,
    }
}

pub fn run(command: &Command, limits: &Limits, format: Format) -> Result<Reply, Error> {
    let ok = |out: Output| Ok(holds_unless(out, format, false));
    match command {
        Command::Primes { bound } => {
            let primes = primes_up_to(*bound, limits)?;
            let out = PrimesOut {
                bound: *bound,
                count: primes.len() as u64,
                primes,
            };
            let rows = out.primes.iter().map(|p| vec![p.to_string()]).collect();
            let text = format!("{}\n", join(&out.primes, " "));
            ok(Output::new(&out).rows(&["p"], rows).table(text))
        }
        Command::Factor { n } => {
            let f = factorize(*n, limits)?;
            let rows = f
                .pairs()
                .iter()
                .map(|(p, e)| vec![p.to_string(), e.to_string()])
                .collect();
            let text = format!("{n} = {f}\n");
            let out = FactorOut {
                n: *n,
                factorization: f,
            };
            ok(Output::new(&out)
                .rows(&["prime", "exponent"], rows)
                .table(text))
        }
        Command::Valuation { q: x, p } => {
            let v = valuation(x, *p)?;
            let out = ValuationOut {
                q: x.clone(),
                p: *p,
                valuation: v,
            };
            let rows = vec![vec![q(x), p.to_string(), v.to_string()]];
            ok(Output::new(&out)
                .rows(&["q", "p", "valuation"], rows)
                .table(format!("{v}\n")))
        }
        Command::Absval { q: x, place } => {
            if let Place::Finite(p) = place {
                valuation(x, *p)?;
            }
            let value = absolute_value(x, *place);
            let rows = vec![vec![q(x), place.to_string(), q(&value)]];
            let text = format!("{}\n", q(&value));
            let out = AbsvalOut {
                q: x.clone(),
                place: *place,
                value,
            };
            ok(Output::new(&out)
                .rows(&["q", "place", "value"], rows)
                .table(text))
        }
        Command::ProductFormula { q: x } => {
            let terms: Vec<PlaceValue> = product_formula_terms(x, limits)?
                .into_iter()
                .map(|(place, value)| PlaceValue { place, value })
                .collect();
            let product = terms
                .iter()
                .fold(Rational::from_integer(1.into()), |acc, t| acc * &t.value);
            let rows = terms
                .iter()
                .map(|t| vec![t.place.to_string(), q(&t.value)])
                .collect();
            let failed = product != Rational::from_integer(1.into());
            let text = format!("{}\n", q(&product));
            let out = ProductOut {
                q: x.clone(),
                terms,
                product,
            };
            Ok(holds_unless(
                Output::new(&out)
                    .rows(&["place", "value"], rows)
                    .table(text),
                format,
                failed,
            ))
        }
        Command::EuclidWitness { primes } => {
            let w = euclid_witness(&primes.0, limits)?;
            let row = |kind: &str, pv: &PlaceValue| {
                vec![kind.to_string(), pv.place.to_string(), q(&pv.value)]
            };
            let rows = w
                .local
                .iter()
                .map(|pv| row("local", pv))
                .chain(w.missing.iter().map(|pv| row("missing", pv)))
                .collect();
            let local = w
                .local
                .iter()
                .map(|pv| format!("|q|_{} = {}", pv.place, q(&pv.value)))
                .collect::<Vec<_>>();
            let missing = w
                .missing
                .iter()
                .map(|pv| format!("|q|_{} = {}", pv.place, q(&pv.value)))
                .collect::<Vec<_>>();
            let text = fields(&[
                ("primes", join(&w.primes, ",")),
                ("q", q(&w.q)),
                ("local", local.join("  ")),
                ("partial_product", q(&w.partial_product)),
                ("missing", missing.join("  ")),
                ("global_product", q(&w.global_product)),
            ]);
            let failed = w.global_product != Rational::from_integer(1.into());
            Ok(holds_unless(
                Output::new(&w)
                    .rows(&["kind", "place", "value"], rows)
                    .table(text),
                format,
                failed,
            ))
        }
        Command::Approximate { targets, eps } => {
            let cert = weak_approximate(&targets.0, eps)?;
            let rows: Vec<Vec<String>> = cert
                .items
                .iter()
                .map(|it| {
                    vec![
                        it.place.to_string(),
                        q(&it.target),
                        q(&it.epsilon),
                        q(&it.achieved),
                    ]
                })
                .collect();
            let mut out =
                Output::new(&cert).rows(&["place", "target", "epsilon", "achieved"], rows.clone());
            let mut text = format!("q = {}\n", q(&cert.q));
            text.push_str(
                &Output::new(&())
                    .rows(&["place", "target", "epsilon", "achieved"], rows)
                    .render(Format::Table),
            );
            out = out.table(text);
            ok(out)
        }
        Command::Smooth { r, n } => {
            let set = smooth_members(*r, *n, limits)?;
            let rows = set.members.iter().map(|x| vec![x.to_string()]).collect();
            let text = format!("count {}\n{}\n", set.len(), join(&set.members, " "));
            ok(Output::new(&set).rows(&["n"], rows).table(text))
        }
        Command::ErdosBound { r, n, scan: false } => {
            let b = erdos_defect_bound(*r, *n, limits)?;
            let rows = vec![vec![
                b.r.to_string(),
                b.n.to_string(),
                b.defect.to_string(),
                b.bound.to_string(),
                b.holds.to_string(),
            ]];
            let failed = !b.holds;
            Ok(holds_unless(
                Output::new(&b).rows(&["r", "N", "defect", "bound", "holds"], rows),
                format,
                failed,
            ))
        }
        Command::ErdosBound { r, n, scan: true } => {
            let s = erdos_defect_scan(*r, *n, limits)?;
            let failure = s
                .first_failure
                .as_ref()
                .map_or(String::new(), |f| f.n.to_string());
            let rows = vec![vec![
                s.r.to_string(),
                s.max_n.to_string(),
                s.checked.to_string(),
                s.min_slack.to_string(),
                failure,
            ]];
            let failed = s.first_failure.is_some();
            Ok(holds_unless(
                Output::new(&s).rows(
                    &["r", "max_N", "checked", "min_slack", "first_failure"],
                    rows,
                ),
                format,
                failed,
            ))
        }
        Command::TailSum { r, bound } => {
            let tail = tail_reciprocal_sum(*r, *bound, limits)?;
            let rows = vec![vec![r.to_string(), bound.to_string(), q(&tail)]];
            let text = format!("{}\n", q(&tail));
            let out = TailOut {
                r: *r,
                bound: *bound,
                tail,
            };
            ok(Output::new(&out)
                .rows(&["r", "bound", "tail"], rows)
                .table(text))
        }
        Command::MinimalR { bound, theta } => {
            let r = minimal_r_for_tail(*bound, theta, limits)?;
            let rows = vec![vec![bound.to_string(), q(theta), r.to_string()]];
            let out = MinimalROut {
                bound: *bound,
                theta: theta.clone(),
                r,
            };
            ok(Output::new(&out)
                .rows(&["bound", "theta", "r"], rows)
                .table(format!("{r}\n")))
        }
        Command::RecipSum {
            bound,
            enclosure: false,
        } => {
            let sum = prime_reciprocal_partial_sum(*bound, limits)?;
            let rows = vec![vec![bound.to_string(), q(&sum)]];
            let text = format!("{}\n", q(&sum));
            let out = ExactSumOut { bound: *bound, sum };
            ok(Output::new(&out).rows(&["bound", "sum"], rows).table(text))
        }
        Command::RecipSum {
            bound,
            enclosure: true,
        } => {
            let b = prime_reciprocal_sum_bounds(*bound, limits)?;
            let rows = vec![vec![
                b.bound.to_string(),
                b.primes.to_string(),
                q(&b.lower),
                q(&b.upper),
            ]];
            ok(Output::new(&b).rows(&["bound", "primes", "lower", "upper"], rows))
        }
        Command::Density { r, checkpoints } => {
            let rep = density_profile(*r, &checkpoints.0, limits)?;
            let rows: Vec<Vec<String>> = rep
                .checkpoints
                .iter()
                .map(|row| {
                    vec![
                        row.n.to_string(),
                        row.count.to_string(),
                        q(&row.ratio),
                        q(&row.lower_bound),
                    ]
                })
                .collect();
            let header = ["N", "count", "ratio", "lower_bound"];
            let text = format!(
                "r {}\n{}bound holds: {}\n",
                rep.r,
                aligned(&header, &rows),
                rep.bound_holds()
            );
            let failed = !rep.bound_holds();
            Ok(holds_unless(
                Output::new(&rep).rows(&header, rows).table(text),
                format,
                failed,
            ))
        }
        Command::Classify { n, r, m } => {
            let class = exponent_class(*n, *r, *m, limits)?;
            let representative = class_representative(&class, limits)?;
            let rows = vec![vec![
                n.to_string(),
                vector(&class.v),
                representative.to_string(),
            ]];
            let text = format!("{class} representative {representative}\n");
            let out = ClassifyOut {
                n: *n,
                class,
                representative,
            };
            ok(Output::new(&out)
                .rows(&["n", "v", "representative"], rows)
                .table(text))
        }
        Command::Partition { r, n, m, show } => {
            let summary = partition_classes(*r, *n, *m, limits)?.summary(*show, limits)?;
            let rows: Vec<Vec<String>> = summary
                .classes
                .iter()
                .map(|c| {
                    vec![
                        vector(&c.v),
                        c.count.to_string(),
                        c.representative.to_string(),
                        join(&c.first_members, " "),
                    ]
                })
                .collect();
            let header = ["v", "count", "representative", "first_members"];
            let text = fields(&[
                ("smooth_count", summary.smooth_count.to_string()),
                ("nonempty_classes", summary.nonempty_classes.to_string()),
                (
                    "densest",
                    format!("{} x{}", vector(&summary.densest_v), summary.densest_count),
                ),
            ]) + &aligned(&header, &rows);
            ok(Output::new(&summary).rows(&header, rows).table(text))
        }
        Command::Decompose { n, m } => {
            let d = decompose(*n, *m, limits)?;
            let rows = vec![vec![
                d.n.to_string(),
                d.m.to_string(),
                d.free_part.to_string(),
                d.root.to_string(),
            ]];
            let text = format!("{} = {} * {}^{}\n", d.n, d.free_part, d.root, d.m);
            ok(Output::new(&d)
                .rows(&["n", "m", "free_part", "root"], rows)
                .table(text))
        }
        Command::FindAp { set, k } => {
            let members = MemberSet::with_limits(set.0.iter().copied(), limits)?;
            let witness = find_kap(&members, *k)?;
            let rows = witness.iter().map(ap_row).collect();
            let text = match &witness {
                Some(w) => format!("{}\n", join(&w.terms().collect::<Vec<_>>(), ",")),
                None => "none\n".to_string(),
            };
            let out = FindApOut {
                size: members.len() as u64,
                k: *k,
                witness,
            };
            ok(Output::new(&out).rows(&["a", "d", "k"], rows).table(text))
        }
        Command::ApFreeMax { n, k } => {
            let best = ap_free_max(*n, *k, limits)?;
            let rows = vec![vec![
                best.n.to_string(),
                best.k.to_string(),
                best.size.to_string(),
                join(&best.witness, " "),
            ]];
            let text = format!("{} {{{}}}\n", best.size, join(&best.witness, ","));
            ok(Output::new(&best)
                .rows(&["N", "k", "size", "witness"], rows)
                .table(text))
        }
        Command::ClassScan { r, n, m, k, class } => {
            let mut found = class_ap_scan(*r, *n, *m, *k, limits)?;
            if let Some(only) = class {
                let wanted = ExponentClass::new(*m, only.0.clone())?;
                if wanted.r() != *r {
                    return Err(Error::InvalidInput(format!(
                        "class {wanted} has {} residues, expected {r}",
                        wanted.r()
                    )));
                }
                found.retain(|c| c.class == wanted);
            }
            let rows: Vec<Vec<String>> = found
                .iter()
                .map(|c| {
                    let mut row = vec![vector(&c.class.v)];
                    row.extend(ap_row(&c.witness));
                    row
                })
                .collect();
            let header = ["v", "a", "d", "k"];
            let text = format!(
                "witnesses {}\n{}",
                found.len(),
                if found.is_empty() {
                    String::new()
                } else {
                    aligned(&header, &rows)
                }
            );
            ok(Output::new(&found).rows(&header, rows).table(text))
        }
        Command::VerifyCubes { bound } => {
            let rep = verify_no_cube_ap(*bound, limits)?;
            Ok(holds_unless(verification(&rep), format, !rep.holds()))
        }
        Command::VerifyPowers { exp, bound } => {
            let rep = verify_no_power_ap(*exp, *bound, limits)?;
            Ok(holds_unless(verification(&rep), format, !rep.holds()))
        }
        Command::VerifySquares4 { bound } => {
            let rep = verify_no_4_square_ap(*bound, limits)?;
            Ok(holds_unless(verification(&rep), format, !rep.holds()))
        }
        Command::Squares3 { bound } => {
            let found = square_3ap_search(*bound, limits)?;
            let rows: Vec<Vec<String>> = found.iter().map(ap_row).collect();
            let lines: String = found
                .iter()
                .map(|w| format!("{}\n", join(&w.terms().collect::<Vec<_>>(), ",")))
                .collect();
            let text = format!("count {}\n{lines}", found.len());
            ok(Output::new(&found).rows(&["a", "d", "k"], rows).table(text))
        }
        Command::Prove { route, r, n } => {
            ok(pipeline_output(&run_pipeline(*route, *r, *n, limits)?))
        }
    }
}
