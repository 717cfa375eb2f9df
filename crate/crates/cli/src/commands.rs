use std::io::Read;

use koszulkit::field::{Field, PrimeField, Rationals};
use koszulkit::gb::{
    buchberger, default_degree_cap, is_groebner, veronese2_initial_split,
    veronese2_kernel_gens_for, veronese2_order, veronese2_variables,
};
use koszulkit::hilbert::{segre_numerics, veronese_numerics, AlgebraNumerics};
use koszulkit::input::InputDescription;
use koszulkit::monomial::{
    ci_plus_two_linear, has_two_linear_resolution, is_chordal, linear_quotients_order,
    nonedge_graph, uk_recognize, Chordality, MonomialIdeal,
};
use koszulkit::obstruction::{
    br_obstruction, default_scan_order, family_scan, Asymptotic, Family, ObstructionReport,
    ScanVerdict,
};
use koszulkit::resolution::{
    default_degree_bound, golod_map_check, koszul_check, linearity_defect, minimal_resolution,
    serre_check, BettiTable, GradedModulePresentation, QuotientRing, DEFAULT_HOMOLOGICAL_BOUND,
};
use koszulkit::parse_input;
use serde_json::{json, Value};

use crate::report::{Failure, Report};
use crate::{reproduce, Cli, Command, FamilyArg};

type Outcome = Result<Report, Failure>;

/// Calls a field-generic command over `Q` or `F_p` per `--char`.
macro_rules! with_field {
    ($cli:expr, $f:ident($($arg:expr),*)) => {
        match $cli.characteristic {
            0 => $f(&Rationals, $($arg),*),
            p => $f(&PrimeField::new(p)?, $($arg),*),
        }
    };
}

pub fn run(cli: &Cli) -> Outcome {
    if cli.characteristic != 0 {
        PrimeField::new(cli.characteristic)?;
    }
    match &cli.command {
        Command::Veronese { n, c } => numerics(cli, "veronese", veronese_numerics(*n, *c)?),
        Command::Segre { m, n } => numerics(cli, "segre", segre_numerics(*m, *n)?),
        Command::Obstruction { veronese, segre } => {
            let a = match (veronese.as_deref(), segre.as_deref()) {
                (Some(&[n, c]), None) => veronese_numerics(n, c)?,
                (None, Some(&[m, n])) => segre_numerics(m, n)?,
                _ => return Err(Failure::Usage("obstruction needs --veronese N C or --segre M N".into())),
            };
            obstruction(cli, a)
        }
        Command::Scan { family, first, second } => scan(cli, *family, first.clone(), second.clone()),
        Command::Monomial => monomial(cli),
        Command::Uk => uk(cli),
        Command::Gb { veronese2: Some(n) } => with_field!(cli, gb_veronese2(cli, *n)),
        Command::Gb { veronese2: None } => with_field!(cli, gb(cli)),
        Command::Resolve => with_field!(cli, resolve(cli)),
        Command::Lind => with_field!(cli, lind(cli)),
        Command::Golod { serre } => with_field!(cli, golod(cli, *serre)),
        Command::Koszul => with_field!(cli, koszul(cli)),
        Command::ReproducePaper => Ok(reproduce::run()),
    }
}

fn load_input(cli: &Cli) -> Result<InputDescription, Failure> {
    let path = cli
        .input
        .as_ref()
        .ok_or_else(|| Failure::Usage("this command needs --input FILE".into()))?;
    let text = if path.as_os_str() == "-" {
        let mut s = String::new();
        std::io::stdin()
            .read_to_string(&mut s)
            .map_err(|e| Failure::Usage(format!("cannot read standard input: {e}")))?;
        s
    } else {
        std::fs::read_to_string(path)
            .map_err(|e| Failure::Usage(format!("cannot read {}: {e}", path.display())))?
    };
    Ok(parse_input(&text)?)
}

fn numerics(cli: &Cli, command: &'static str, a: AlgebraNumerics) -> Outcome {
    let mut r = Report::new(command, cli.characteristic);
    let h_at_minus_one = a.h_poly.eval_i64(-1);
    r.param("label", a.label.as_str());
    r.verdicts.push(json!({
        "kind": "numerics",
        "numerics": a,
        "codim": a.codim(),
        "hAtMinusOne": h_at_minus_one.to_string(),
        "multiplicityBoundOk": koszulkit::obstruction::ci_multiplicity_check(&a),
    }));
    r.line(format!("algebra        {}", a.label))
        .line(format!("h-polynomial   {}", a.h_poly))
        .line(format!("dim            {}", a.dim))
        .line(format!("embdim         {}", a.embdim))
        .line(format!("codim          {}", a.codim()))
        .line(format!("multiplicity   {}", a.multiplicity))
        .line(format!("h(-1)          {h_at_minus_one}"));
    Ok(r)
}

fn obstruction_json(rep: &ObstructionReport) -> Value {
    let mut v = serde_json::to_value(rep).expect("report serializes");
    v["firstNegativeIndex"] = json!(rep.first_negative_index());
    v
}

fn verdict_text(rep: &ObstructionReport) -> String {
    match &rep.verdict {
        ScanVerdict::PassUpTo { order } => format!("non-negative through z^{order}"),
        ScanVerdict::FailAt { index, coefficient } => {
            format!("negative coefficient at z^{index}: {coefficient}")
        }
    }
}

fn asymptotic_text(a: Asymptotic) -> &'static str {
    match a {
        Asymptotic::EventuallyNegative => "eventually negative",
        Asymptotic::EventuallyNonnegative => "eventually non-negative",
        Asymptotic::Inconclusive => "polynomial series (scan decides)",
    }
}

fn obstruction(cli: &Cli, a: AlgebraNumerics) -> Outcome {
    let order = cli.order.unwrap_or_else(|| default_scan_order(a.codim()));
    let rep = br_obstruction(&a, order)?;
    let mut r = Report::new("obstruction", cli.characteristic);
    r.param("label", a.label.as_str()).param("order", order);
    r.bound("scanOrder", order);
    r.line(format!("algebra        {} (codim {})", rep.label, rep.codim_used))
        .line(format!("h-polynomial   {}", a.h_poly))
        .line(format!("scan           {}", verdict_text(&rep)))
        .line(format!("g(-1)          {} after removing (1+z)^{}", rep.g_at_minus_one, rep.vanish_order))
        .line(format!("tail           {}", asymptotic_text(rep.asymptotic_verdict)))
        .line(format!("tail verified  {}", rep.tail_verified))
        .line(format!("e <= 2^codim   {}", rep.multiplicity_bound_ok));
    r.verdicts.push(obstruction_json(&rep));
    Ok(r)
}

fn scan(cli: &Cli, family: FamilyArg, first: std::ops::RangeInclusive<u64>, second: std::ops::RangeInclusive<u64>) -> Outcome {
    let fam = match family {
        FamilyArg::Veronese => Family::Veronese,
        FamilyArg::Segre => Family::Segre,
    };
    let reports = family_scan(fam, first.clone(), second.clone(), cli.order)?;
    let mut r = Report::new("scan", cli.characteristic);
    r.param("family", format!("{family:?}").to_lowercase())
        .param("first", format!("{}..{}", first.start(), first.end()))
        .param("second", format!("{}..{}", second.start(), second.end()));
    if let Some(n) = cli.order {
        r.bound("scanOrder", n);
    }
    r.line(format!("{:<12} {:>6} {:>14} {:>8} {:<24}", "algebra", "codim", "first negative", "g(-1)", "tail"));
    for rep in &reports {
        let first = rep.first_negative_index().map_or("-".to_string(), |i| i.to_string());
        r.line(format!(
            "{:<12} {:>6} {:>14} {:>8} {:<24}",
            rep.label,
            rep.codim_used,
            first,
            rep.g_at_minus_one.to_string(),
            asymptotic_text(rep.asymptotic_verdict)
        ));
        r.verdicts.push(obstruction_json(rep));
    }
    Ok(r)
}

fn chordality_text(c: &Chordality) -> String {
    match c {
        Chordality::PerfectEliminationOrdering(o) => format!("chordal, elimination order {}", o.join(" ")),
        Chordality::ChordlessCycle(c) => format!("chordless cycle {}", c.join(" ")),
    }
}

fn monomial(cli: &Cli) -> Outcome {
    let input = load_input(cli)?;
    let ideal = input.monomial_ideal()?;
    let mut r = Report::new("monomial", cli.characteristic);
    r.param("ideal", ideal.rendered_generators());
    r.line(format!("ideal          ({})", ideal.rendered_generators().join(", ")));

    let whole = has_two_linear_resolution(&ideal)?;
    r.line(format!("2-linear       {} ({})", whole.holds(), chordality_text(&whole.chordality)));
    if let Some(order) = linear_quotients_order(&ideal) {
        let names: Vec<String> = order.iter().map(|m| ideal.render_generator(m)).collect();
        r.line(format!("linear quotients {}", names.join(", ")));
    }
    r.verdicts.push(json!({ "kind": "twoLinear", "holds": whole.holds(), "witness": whole }));

    match ci_plus_two_linear(&ideal)? {
        Some(cert) => {
            let valid = cert.validate(&ideal);
            r.cross_check_failure |= !valid;
            r.line(format!("U (regular)    ({})", cert.ci_part.rendered_generators().join(", ")))
                .line(format!("V (2-linear)   ({})", cert.linear_part.rendered_generators().join(", ")))
                .line(format!("V graph        {}", chordality_text(&cert.linear_witness.chordality)))
                .line(format!("replay         {}", if valid { "ok" } else { "FAILED" }));
            r.verdicts.push(json!({ "kind": "backelinRoos", "certified": true }));
            r.certificates.push(json!({
                "kind": "ciPlusTwoLinear",
                "ciPart": cert.ci_part.rendered_generators(),
                "linearPart": cert.linear_part.rendered_generators(),
                "chordality": cert.linear_witness,
                "linearQuotients": cert.linear_quotients,
                "replayed": valid,
            }));
        }
        None => {
            r.line("no complete-intersection plus 2-linear split");
            r.verdicts.push(json!({ "kind": "backelinRoos", "certified": false }));
        }
    }
    Ok(r)
}

fn uk(cli: &Cli) -> Outcome {
    let input = load_input(cli)?;
    let ideal = input.monomial_ideal()?;
    let mut r = Report::new("uk", cli.characteristic);
    r.param("ideal", ideal.rendered_generators());
    match uk_recognize(&ideal) {
        Some(d) => {
            r.line(format!("derivation     {}", d.render()));
            r.verdicts.push(json!({ "kind": "universallyKoszul", "recognized": true }));
            r.certificates.push(json!({ "kind": "ukDerivation", "rendered": d.render(), "tree": d }));
        }
        None => {
            r.line("not recognized from H(m) by the construction rules");
            r.verdicts.push(json!({ "kind": "universallyKoszul", "recognized": false }));
        }
    }
    Ok(r)
}

fn gb<F: Field>(field: &F, cli: &Cli) -> Outcome {
    let input = load_input(cli)?;
    let order = input.monomial_order();
    let gens = input.ideal_over(field);
    let cap = cli.cap.unwrap_or_else(|| default_degree_cap(&gens));
    let basis = buchberger(&gens, &order, cap)?;
    let names = &input.variables;
    let mut r = Report::new("gb", field.characteristic());
    r.param("order", order.render(names));
    r.bound("degreeCap", cap);
    let elements: Vec<String> = basis.elements().iter().map(|g| g.render(names, &order)).collect();
    let initial = basis.initial_ideal(names).rendered_generators();
    r.line(format!("order          {}", order.render(names)))
        .line(format!("complete       {} (cap {cap})", basis.is_complete()));
    for e in &elements {
        r.line(format!("  {e}"));
    }
    r.line(format!("initial ideal  ({})", initial.join(", ")));
    r.verdicts.push(json!({ "kind": "groebnerBasis", "complete": basis.is_complete(), "elements": elements }));
    r.certificates.push(json!({ "kind": "initialIdeal", "generators": initial }));
    Ok(r)
}

fn gb_veronese2<F: Field>(field: &F, cli: &Cli, n: usize) -> Outcome {
    let order = veronese2_order(n)?;
    let gens = veronese2_kernel_gens_for(field, n, &order)?;
    let cap = cli.cap.unwrap_or(6);
    let check = is_groebner(&gens, &order, cap);
    let names = veronese2_variables(n);
    let mut r = Report::new("gb", field.characteristic());
    r.param("veronese2", n).param("order", order.render(&names));
    r.bound("degreeCap", cap);
    r.line(format!("kernel binomials {}", gens.len()))
        .line(format!("S-pairs checked  {} (skipped above cap: {})", check.pairs_checked, check.pairs_skipped))
        .line(format!("groebner        {}", check.holds()));
    let mut verdict = json!({
        "kind": "veronese2Groebner",
        "holds": check.holds(),
        "pairsChecked": check.pairs_checked,
        "pairsSkipped": check.pairs_skipped,
    });
    if let Some(w) = &check.witness {
        let rem = w.remainder.render(&names, &order);
        r.line(format!("witness        S({}, {}) reduces to {rem}", w.i, w.j));
        verdict["witness"] = json!({ "i": w.i, "j": w.j, "remainder": rem });
    }
    r.verdicts.push(verdict);

    let leads = gens.iter().filter_map(|g| g.leading_monomial(&order).cloned());
    let initial = MonomialIdeal::new(names.clone(), leads);
    let split = veronese2_initial_split(&initial, n);
    let mut cert = json!({
        "kind": "initialSplit",
        "squaresPlusOffDiagonal": split.is_squares_plus_offdiagonal(n),
        "rest": split.rest.rendered_generators(),
    });
    if let Ok(graph) = nonedge_graph(&split.rest) {
        let c = is_chordal(&graph);
        r.line(format!(
            "L graph        {} vertices, {} edges, {}",
            graph.len(),
            graph.edge_count(),
            chordality_text(&c)
        ));
        cert["graph"] = json!({ "vertices": graph.len(), "edges": graph.edge_count(), "chordality": c });
    }
    r.certificates.push(cert);
    Ok(r)
}

struct Bounds {
    h: usize,
    d: u32,
}

fn bounds(cli: &Cli, input: &InputDescription) -> Bounds {
    let h = cli.hbound.unwrap_or(DEFAULT_HOMOLOGICAL_BOUND);
    let d = cli.dbound.unwrap_or_else(|| default_degree_bound(h, input.max_degree()));
    Bounds { h, d }
}

fn betti_lines(r: &mut Report, table: &BettiTable) {
    for line in table.render().lines() {
        r.line(line);
    }
}

fn resolve<F: Field>(field: &F, cli: &Cli) -> Outcome {
    let input = load_input(cli)?;
    let Bounds { h, d } = bounds(cli, &input);
    let ring = input.quotient_ring(field, d)?;
    let module = input.module_over(&ring)?;
    let res = minimal_resolution(&module, h, d)?;
    let d_squared = res.check_d_squared() && res.check_linear_part_squared();
    let minimal = res.check_minimal();
    let euler = res.euler_characteristic();
    let euler_ok = euler.iter().all(|c| c.holds());

    let mut r = Report::new("resolve", field.characteristic());
    r.bound("homological", h).bound("internalDegree", d);
    betti_lines(&mut r, res.betti());
    r.line(format!("bounds: h = {h}, D = {d}"))
        .line(format!("checks: d^2 = 0 {d_squared}, minimal {minimal}, Euler columns {} ok {euler_ok}", euler.len()));
    r.cross_check_failure = !(d_squared && minimal && euler_ok);
    let t: Vec<_> = (0..=h).map(|i| res.betti().t(i)).collect();
    r.verdicts.push(json!({ "kind": "betti", "table": res.betti(), "t": t }));
    r.certificates.push(json!({
        "kind": "resolutionChecks",
        "dSquaredZero": d_squared,
        "minimal": minimal,
        "eulerColumns": euler,
    }));
    Ok(r)
}

fn lind<F: Field>(field: &F, cli: &Cli) -> Outcome {
    let input = load_input(cli)?;
    let Bounds { h, d } = bounds(cli, &input);
    let ring = input.quotient_ring(field, d)?;
    let module = input.module_over(&ring)?;
    let rep = linearity_defect(&module, h, d)?;
    let mut r = Report::new("lind", field.characteristic());
    r.bound("homological", h).bound("internalDegree", d);
    r.line(format!("lind >= {}", rep.lind_lower_bound))
        .line(format!("stable within bounds {}", rep.stable_up_to_bounds));
    if let Some((i, j)) = rep.homology_witness {
        r.line(format!("witness: H_{i}(lin F) nonzero in degree {j}"));
    }
    r.verdicts.push(json!({ "kind": "linearityDefect", "report": rep }));
    Ok(r)
}

fn koszul<F: Field>(field: &F, cli: &Cli) -> Outcome {
    let input = load_input(cli)?;
    let Bounds { h, d } = bounds(cli, &input);
    let ring = input.quotient_ring(field, d)?;
    let rep = koszul_check(&ring, h, d)?;
    let mut r = Report::new("koszul", field.characteristic());
    r.bound("homological", h).bound("internalDegree", d);
    betti_lines(&mut r, &rep.betti);
    match rep.offending_cell {
        None => r.line(format!("koszul within bounds (h = {h}, D = {d})")),
        Some((i, j)) => r.line(format!("not koszul: beta_({i},{j})(k) != 0")),
    };
    r.verdicts.push(json!({ "kind": "koszul", "report": rep }));
    Ok(r)
}

fn golod<F: Field>(field: &F, cli: &Cli, serre: Option<u32>) -> Outcome {
    let input = load_input(cli)?;
    if input.extra.is_empty() {
        return Err(Failure::Usage("golod needs an `extra` statement defining R = Q/(extra)".into()));
    }
    let Bounds { h, d } = bounds(cli, &input);
    let q = input.quotient_ring(field, d)?;
    let extra = input.extra_over(field);
    let rep = golod_map_check(&q, &extra, h, d)?;
    let mut r = Report::new("golod", field.characteristic());
    r.bound("homological", h).bound("internalDegree", d);
    r.line("R over Q:");
    betti_lines(&mut r, &rep.betti);
    match rep.violation {
        None if rep.golod_within_bounds => r.line("golod within bounds"),
        None => r.line("not golod: Q is not koszul within bounds"),
        Some((i, j)) => r.line(format!("not golod: t_{i} >= {j} > {}", i + 1)),
    };
    r.verdicts.push(json!({ "kind": "golod", "report": rep }));

    if let Some(bound) = serre {
        let hs = h.max(bound as usize);
        let ds = d.max(bound);
        let q = input.quotient_ring(field, ds)?;
        let mut all = input.ideal_over(field);
        all.extend(extra.iter().cloned());
        let ring_r = QuotientRing::new(field, input.variables.clone(), all, input.monomial_order(), ds)?;
        let k_q = minimal_resolution(&GradedModulePresentation::residue_field(&q), hs, ds)?;
        let r_q = minimal_resolution(&GradedModulePresentation::cyclic(&q, &extra)?, hs, ds)?;
        let k_r = minimal_resolution(&GradedModulePresentation::residue_field(&ring_r), hs, ds)?;
        let s = serre_check(k_q.betti(), r_q.betti(), k_r.betti(), bound)?;
        r.line(format!(
            "serre through degree {bound}: inequality {}, equality {}",
            s.inequality_holds, s.equality_holds
        ));
        if let Some((i, j)) = s.first_difference {
            r.line(format!("first difference at s^{j} z^{i}"));
        }
        r.verdicts.push(json!({ "kind": "serre", "report": s }));
    }
    Ok(r)
}
