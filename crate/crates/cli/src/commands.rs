use cayley_core::bundles::{self, make_string_bundle};
use cayley_core::exactnum::{
    binomial, granville_binomial, morley_check, named_binomial_congruences, ord_p, power_of_two_check, primes_up_to,
    wolstenholme_check,
};
use cayley_core::gcdlaws::{classify, four_square_gcd, gcd_of_kind, FOUR_SQUARE_CYCLE};
use cayley_core::generators::{
    check_theorem_conditions, construct_m_with, construct_n_with, verify_a_congruence, verify_b_congruence,
    verify_cor_sn1n2eta, ConditionEntry, ConstructionOptions, GeneratorReport, Mutation, Triple, DEFAULT_POWER_CAP,
};
use cayley_core::pushforward::{closed_form_sn, closed_form_sn1n2, compare_x_polys};
use cayley_core::{BigInt, GcdKind, PadicOrder, Partition, PushforwardCache};
use num_traits::{ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde_json::{json, Map, Value};

use crate::report::{Entry, Outcome, Report, Table};
use crate::CliError;

type Result<T> = std::result::Result<T, CliError>;

fn input<E: std::fmt::Display>(e: E) -> CliError {
    CliError::Input(e.to_string())
}

fn outcome(command: &[&str], parameters: Value, entries: Vec<Entry>, table: Option<Table>) -> Outcome {
    let command = command.iter().map(|s| s.to_string()).collect();
    Outcome { report: Report::new(command, parameters, entries), table }
}

fn kind_name(kind: GcdKind) -> &'static str {
    match kind {
        GcdKind::Row => "row",
        GcdKind::Even => "even",
        GcdKind::Diff => "diff",
    }
}

pub fn gcd(kind: GcdKind, from: u64, to: u64) -> Result<Outcome> {
    if from > to {
        return Err(CliError::Usage(format!("--from {from} exceeds --to {to}")));
    }
    if from < kind.min_n() {
        return Err(CliError::Usage(format!("gcd {} needs n >= {}", kind_name(kind), kind.min_n())));
    }
    let rows: Vec<(u64, BigInt, Vec<(u64, PadicOrder, u32, bool)>)> = (from..=to)
        .into_par_iter()
        .map(|n| {
            let value = gcd_of_kind(kind, n).map_err(input)?;
            let mut primes = Vec::new();
            for p in primes_up_to(2 * n + 1).into_iter().filter(|&p| p > 2) {
                let observed = ord_p(&value, p).map_err(input)?;
                let predicted = classify(kind, n, p).map_err(input)?.predicted_ord;
                let ok = observed.finite() == Some(predicted as u64);
                primes.push((p, observed, predicted, ok));
            }
            Ok((n, value, primes))
        })
        .collect::<Result<_>>()?;
    let mut table = Table::new(&["kind", "n", "p", "observed", "predicted", "pass"]);
    let mut entries = Vec::with_capacity(rows.len());
    for (n, value, primes) in rows {
        let mut observed = Map::new();
        let mut expected = Map::new();
        for (p, o, e, ok) in &primes {
            observed.insert(p.to_string(), json!(o));
            expected.insert(p.to_string(), json!(e));
            table.push(vec![kind_name(kind).into(), n.to_string(), p.to_string(), o.to_string(), e.to_string(), ok.to_string()]);
        }
        entries.push(Entry::new(
            format!("gcd_{}({n})", kind_name(kind)),
            json!({ "n": n }),
            json!({ "value": value.to_string(), "ord": observed }),
            json!({ "ord": expected }),
            primes.iter().all(|r| r.3),
        ));
    }
    let params = json!({ "kind": kind_name(kind), "from": from, "to": to });
    Ok(outcome(&["gcd", kind_name(kind)], params, entries, Some(table)))
}

fn pick_prime(rng: &mut ChaCha8Rng, primes: &[u64]) -> u64 {
    primes[rng.gen_range(0..primes.len())]
}

pub fn congruence(prime_cap: u64, samples: u32, max_n: u64, max_q: u32, seed: u64) -> Result<Outcome> {
    if prime_cap < 5 || max_q == 0 || max_n == 0 {
        return Err(CliError::Usage("need --prime-cap >= 5, --max-q >= 1 and --max-n >= 1".into()));
    }
    let mut entries = Vec::new();
    let mut table = Table::new(&["statement", "p", "detail", "pass"]);
    let mut record = |entries: &mut Vec<Entry>, id: String, inputs: Value, pass: bool, detail: String| {
        table.push(vec![id.clone(), inputs.get("p").map_or(String::new(), |p| p.to_string()), detail.clone(), pass.to_string()]);
        entries.push(Entry::new(id, inputs, json!(detail), Value::Null, pass));
    };
    let odd: Vec<u64> = primes_up_to(prime_cap).into_iter().filter(|&p| p >= 5).collect();
    for &p in &odd {
        let w = wolstenholme_check(p).map_err(input)?;
        record(&mut entries, format!("wolstenholme({p})"), json!({ "p": p }), w, "H_{p-1} numerator mod p^2".into());
        let m = morley_check(p, 3).map_err(input)?;
        record(&mut entries, format!("morley({p})"), json!({ "p": p }), m, "mod p^3".into());
        let t = power_of_two_check(p).map_err(input)?;
        record(&mut entries, format!("power_of_two({p})"), json!({ "p": p }), t, "2^(2(p-1)) = 2^p - 1 mod p^2".into());
    }
    for p in [5u64, 7, 11, 13] {
        for i in 1..=3 {
            for c in named_binomial_congruences(p, i).map_err(input)? {
                let pass = c.holds().map_err(input)?;
                record(&mut entries, format!("{} [p={p}, i={i}]", c.name), json!({ "p": p, "i": i }), pass, c.lhs.to_string());
            }
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let small: Vec<u64> = primes_up_to(97);
    for _ in 0..samples {
        let n = rng.gen_range(0..=max_n);
        let m = rng.gen_range(0..=n);
        let p = pick_prime(&mut rng, &small);
        let q = rng.gen_range(1..=max_q);
        let g = granville_binomial(n, m, p, q).map_err(input)?;
        let modulus = BigInt::from(g.modulus);
        let rebuilt = if g.carries >= q {
            BigInt::zero()
        } else {
            (BigInt::from(p).pow(g.carries) * BigInt::from(g.unit)) % &modulus
        };
        let exact = binomial(n, m as i64) % &modulus;
        let pass = rebuilt == exact;
        record(
            &mut entries,
            format!("granville(n={n}, m={m}, p={p}, q={q})"),
            json!({ "n": n, "m": m, "p": p, "q": q }),
            pass,
            format!("{rebuilt} vs {exact}"),
        );
    }
    let params = json!({ "prime_cap": prime_cap, "samples": samples, "max_n": max_n, "max_q": max_q, "seed": seed });
    Ok(outcome(&["congruence"], params, entries, Some(table)))
}

pub fn pushforward(partition: &Partition, n_f: u64) -> Result<Outcome> {
    if n_f == 0 {
        return Err(CliError::Usage("--nf must be positive".into()));
    }
    let cache = PushforwardCache::global();
    let e_poly = cache.e_poly(partition).map_err(input)?;
    let x_poly = cache.x_poly(partition, n_f).map_err(input)?;
    let closed = match partition.parts() {
        [n] if *n >= 2 => Some(closed_form_sn(*n, n_f)),
        [a, b] if a != b => Some(closed_form_sn1n2((*a).max(*b), (*a).min(*b), n_f).map_err(input)?),
        _ => None,
    };
    let inputs = json!({ "partition": partition, "nf": n_f });
    let observed = json!({ "e_poly": e_poly.to_canonical_string("e"), "x_poly": x_poly.to_canonical_string("x") });
    let entry = match closed {
        Some(c) => {
            let diffs = compare_x_polys(&x_poly, &c);
            Entry::new(
                format!("pushforward{partition}"),
                inputs,
                observed,
                json!({ "x_poly": c.to_canonical_string("x") }),
                diffs.is_empty(),
            )
        }
        None => Entry::computed(format!("pushforward{partition}"), inputs, observed),
    };
    Ok(outcome(&["pushforward"], json!({ "partition": partition, "nf": n_f }), vec![entry], None))
}

pub fn charnum(m: u32, mp: u32, n_f: u64, partition: &Partition) -> Result<Outcome> {
    let spec = make_string_bundle(m, mp, n_f).map_err(input)?;
    let value = bundles::characteristic_number(PushforwardCache::global(), &spec, partition).map_err(input)?;
    let (c1, c2) = spec.string_defect();
    let observed = json!({
        "spec": spec,
        "degrees": [spec.v.degrees, spec.v_prime.degrees],
        "string_defect": [c1.to_string(), c2.to_string()],
        "value": value.to_string(),
    });
    let params = json!({ "m": m, "mp": mp, "nf": n_f, "partition": partition });
    let entry = Entry::new(format!("s{partition}"), params.clone(), observed, json!({ "string_defect": ["0", "0"] }), spec.is_string());
    Ok(outcome(&["charnum"], params, vec![entry], None))
}

fn report_entry(report: &GeneratorReport) -> Entry {
    let mut observed = Map::new();
    let mut expected = Map::new();
    for row in &report.primes {
        observed.insert(row.p.to_string(), json!(row.observed));
        if row.constrained {
            expected.insert(row.p.to_string(), json!(row.predicted));
        }
    }
    let checks: Vec<Value> = report.checks.iter().map(|c| json!({ "clause": c.clause, "pass": c.pass, "detail": c.detail })).collect();
    Entry::new(
        report.label.clone(),
        json!({ "dimension": report.dimension, "nf": report.n_f }),
        json!({
            "s_value": report.s_value.to_string(),
            "ord": observed,
            "checks": checks,
            "combination": report.combination,
        }),
        json!({ "ord": expected }),
        report.pass,
    )
}

fn options(n_f: Option<u64>, cap: Option<u64>, mutation: Option<Mutation>) -> ConstructionOptions {
    ConstructionOptions { power_cap: cap, n_f, mutation }
}

pub fn construct_m(n: u32, n_f: Option<u64>, mutation: Option<Mutation>) -> Result<Outcome> {
    let cache = PushforwardCache::global();
    let report = construct_m_with(cache, n, options(n_f, None, mutation)).map_err(input)?;
    let params = json!({ "n": n, "nf": n_f, "mutation": mutation });
    Ok(outcome(&["construct", "m"], params, vec![report_entry(&report)], None))
}

pub fn construct_n(p: u64, i: u32, j: u32, n_f: Option<u64>, cap: u64, mutation: Option<Mutation>) -> Result<Outcome> {
    let triple = Triple::new(p, i, j).map_err(input)?;
    let cache = PushforwardCache::global();
    let report = construct_n_with(cache, triple, options(n_f, Some(cap), mutation)).map_err(input)?;
    let params = json!({ "p": p, "i": i, "j": j, "nf": n_f, "cap": cap, "mutation": mutation });
    Ok(outcome(&["construct", "n"], params, vec![report_entry(&report)], None))
}

fn condition_entry(e: &ConditionEntry) -> Entry {
    match &e.report {
        Some(r) => report_entry(r),
        None => Entry::new(
            e.label.clone(),
            json!({ "condition": e.condition }),
            json!({ "failures": e.failures }),
            Value::Null,
            false,
        ),
    }
}

pub fn verify_theorem(dim_cap: u32, prime_cap: u64, n_f: Option<u64>, mutation: Option<Mutation>) -> Result<Outcome> {
    let cache = PushforwardCache::global();
    let report = check_theorem_conditions(cache, dim_cap, prime_cap, options(n_f, None, mutation));
    let mut table = Table::new(&["condition", "label", "dimension", "s_value", "pass", "failures"]);
    for e in &report.entries {
        let (dim, s) = e.report.as_ref().map_or((String::new(), String::new()), |r| (r.dimension.to_string(), r.s_value.to_string()));
        table.push(vec![e.condition.to_string(), e.label.clone(), dim, s, e.pass.to_string(), e.failures.join("; ")]);
    }
    let entries = report.entries.iter().map(condition_entry).collect();
    let params = json!({
        "dim_cap": dim_cap,
        "prime_cap": prime_cap,
        "nf": n_f,
        "mutation": mutation,
        "excluded_dimensions": report.excluded_dimensions,
    });
    Ok(outcome(&["verify", "theorem"], params, entries, Some(table)))
}

pub fn verify_corollary(p: u64, i: u32, j: u32, cap: u64) -> Result<Outcome> {
    let triple = Triple::new(p, i, j).map_err(input)?;
    let cor = verify_cor_sn1n2eta(PushforwardCache::global(), triple, cap).map_err(input)?;
    let inputs = json!({ "p": p, "i": i, "j": j });
    let p2 = BigInt::from(p * p);
    let entries = vec![
        Entry::new(
            "corollary part 1",
            json!({ "p": p, "i": i, "j": j, "exponents": cor.exponents_part1 }),
            json!(cor.coefficient_part1.to_string()),
            json!(format!("0 mod {p2}")),
            cor.part1,
        ),
        Entry::new(
            "corollary part 2",
            json!({ "p": p, "i": i, "j": j, "exponents": cor.exponents_part2 }),
            json!(cor.coefficient_part2.to_string()),
            json!(format!("{} mod {p2}", 8 * p)),
            cor.part2,
        ),
    ];
    let mut all = entries;
    for sum in [verify_a_congruence(triple).map_err(input)?, verify_b_congruence(triple).map_err(input)?] {
        all.push(Entry::new(
            format!("{} sum", sum.name),
            inputs.clone(),
            json!(sum.residue.to_string()),
            json!(sum.expected.to_string()),
            sum.pass,
        ));
    }
    Ok(outcome(&["verify", "corollary"], json!({ "p": p, "i": i, "j": j, "cap": cap }), all, None))
}

pub fn verify_closed_forms(max_n: u32, n_f: u64) -> Result<Outcome> {
    if max_n < 4 {
        return Err(CliError::Usage("--max-n must be at least 4".into()));
    }
    let mut partitions: Vec<Partition> = (4..=max_n).map(Partition::single).collect();
    for total in 5..=max_n {
        for n2 in 2..total {
            let n1 = total - n2;
            if n1 > n2 {
                partitions.push(Partition::pair(n1, n2));
            }
        }
    }
    let mut entries: Vec<Entry> = partitions
        .par_iter()
        .map(|p| pushforward(p, n_f).map(|o| o.report.entries.into_iter().next().expect("one entry")))
        .collect::<Result<_>>()?;
    entries.sort_by(|a, b| a.id.cmp(&b.id));
    Ok(outcome(&["verify", "closed-forms"], json!({ "max_n": max_n, "nf": n_f }), entries, None))
}

pub fn conjecture(from: u64, to: u64) -> Result<Outcome> {
    if from < 25 || from > to {
        return Err(CliError::Usage(format!("need 25 <= --from <= --to, got {from}..{to}")));
    }
    let values: Vec<(u64, u64)> = (from..=to)
        .into_par_iter()
        .map(|n| four_square_gcd(n).map(|g| (n, g)).map_err(input))
        .collect::<Result<_>>()?;
    let mut table = Table::new(&["n", "target", "gcd", "expected", "pass"]);
    let mut entries = Vec::new();
    for (n, g) in values {
        let expected = FOUR_SQUARE_CYCLE[((n - 25) % 6).to_usize().expect("small")];
        table.push(vec![n.to_string(), (4 * n + 5).to_string(), g.to_string(), expected.to_string(), (g == expected).to_string()]);
        entries.push(Entry::new(format!("four_square_gcd({n})"), json!({ "n": n }), json!(g), json!(expected), g == expected));
    }
    Ok(outcome(&["conjecture"], json!({ "from": from, "to": to }), entries, Some(table)))
}

pub fn default_power_cap() -> u64 {
    DEFAULT_POWER_CAP
}
