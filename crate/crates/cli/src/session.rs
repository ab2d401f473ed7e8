//! The batch session interpreter: a line-oriented script format with named
//! bindings, one command per line, `#` comments, and deterministic replay.
//!
//! Bindings are typed: rings, algebras (weighted generator lists), objects
//! (algebras with divisor registries and w-ord histories) and elimination
//! chains. Query commands print canonical text; `assert <query> == <value>`
//! compares against it and drives the exit status.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::sync::Arc;

use serde_json::json;

use rees_core::elim::{
    eliminate, eliminate_chain, tau_at, transversal_candidates, ElimMode, Transversal,
};
use rees_core::field::FieldSpec;
use rees_core::invariants::{gamma, monomial_case, t_fn, tilde, w_ord};
use rees_core::parse::{parse_poly, parse_scalar};
use rees_core::poly::Poly;
use rees_core::probe::probe_grid;
use rees_core::rees::ReesAlg;
use rees_core::ring::{PointSpec, Ring};
use rees_core::transform::{blowup_chart, chain_object, pair_transform, BasicObject, CenterSpec};
use rees_core::{Error, Rat};

use crate::format::{chain_to_text, lineage_to_text, parse_weight, table_to_text, LineageNode};

type Result<T> = std::result::Result<T, Error>;

struct ChainVal {
    final_algebra: ReesAlg,
    /// Downstairs object when the chain was taken from an object binding.
    object: Option<BasicObject>,
}

/// Session options, fed from the command line.
pub struct Options {
    /// Coordinate values of the probe grid over ℚ (ignored over 𝔽_p, where
    /// the whole field is used).
    pub probe_values: Option<Vec<i64>>,
    /// Degree guard: bindings whose generators exceed this total degree are
    /// rejected.
    pub max_degree: u32,
}

impl Default for Options {
    fn default() -> Self {
        Options {
            probe_values: None,
            max_degree: 64,
        }
    }
}

#[derive(Default)]
pub struct Report {
    pub text: String,
    pub records: Vec<serde_json::Value>,
    pub commands: usize,
    pub asserts: usize,
    pub failures: usize,
    /// Command errors (not assertion failures).
    pub errors: usize,
}

impl Report {
    pub fn success(&self) -> bool {
        self.failures == 0 && self.errors == 0
    }
}

pub struct Session {
    rings: BTreeMap<String, Arc<Ring>>,
    algebras: BTreeMap<String, ReesAlg>,
    objects: BTreeMap<String, BasicObject>,
    chains: BTreeMap<String, ChainVal>,
    lineage: BTreeMap<String, LineageNode>,
    options: Options,
    report: Report,
}

impl Session {
    pub fn new(options: Options) -> Session {
        Session {
            rings: BTreeMap::new(),
            algebras: BTreeMap::new(),
            objects: BTreeMap::new(),
            chains: BTreeMap::new(),
            lineage: BTreeMap::new(),
            options,
            report: Report::default(),
        }
    }

    pub fn run(mut self, script: &str) -> Report {
        for (lineno, raw) in script.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            self.report.commands += 1;
            match self.exec(line) {
                Ok(output) => {
                    let _ = writeln!(self.report.text, "{}", output);
                }
                Err(e) => {
                    self.report.errors += 1;
                    let _ = writeln!(self.report.text, "line {}: error: {}", lineno + 1, e);
                }
            }
        }
        let _ = writeln!(
            self.report.text,
            "session: {} commands, {} asserts, {} failures, {} errors",
            self.report.commands, self.report.asserts, self.report.failures, self.report.errors
        );
        self.report
    }

    fn grid(&self, ring: &Arc<Ring>) -> Vec<PointSpec> {
        match (&self.options.probe_values, ring.field()) {
            (Some(values), FieldSpec::Rationals) => {
                let scalars: Vec<_> = values.iter().map(|&v| ring.field().from_i64(v)).collect();
                let d = ring.nvars();
                let mut out = Vec::new();
                let mut idx = vec![0usize; d];
                loop {
                    let coords: Vec<_> = idx.iter().map(|&i| scalars[i].clone()).collect();
                    out.push(PointSpec::new(ring, coords).expect("grid point"));
                    let mut i = 0;
                    loop {
                        if i == d {
                            return out;
                        }
                        if idx[i] + 1 < scalars.len() {
                            idx[i] += 1;
                            break;
                        }
                        idx[i] = 0;
                        i += 1;
                    }
                }
            }
            _ => probe_grid(ring),
        }
    }

    fn ring_named(&self, name: &str) -> Result<&Arc<Ring>> {
        self.rings
            .get(name)
            .ok_or_else(|| Error::Parse(format!("unknown ring `{}`", name)))
    }

    /// The algebra behind any binding kind.
    fn algebra_of(&self, name: &str) -> Result<ReesAlg> {
        if let Some(a) = self.algebras.get(name) {
            return Ok(a.clone());
        }
        if let Some(b) = self.objects.get(name) {
            return Ok(b.algebra.clone());
        }
        if let Some(c) = self.chains.get(name) {
            return Ok(c.final_algebra.clone());
        }
        Err(Error::Parse(format!("unknown binding `{}`", name)))
    }

    /// The object behind a binding: objects directly, algebras wrapped as
    /// stage-0 objects over the session grid, chains through their
    /// downstairs companion.
    fn object_of(&self, name: &str) -> Result<BasicObject> {
        if let Some(b) = self.objects.get(name) {
            return Ok(b.clone());
        }
        if let Some(c) = self.chains.get(name) {
            if let Some(b) = &c.object {
                return Ok(b.clone());
            }
            let g = &c.final_algebra;
            return BasicObject::new(g.clone(), &self.grid(g.ring()));
        }
        if let Some(a) = self.algebras.get(name) {
            return BasicObject::new(a.clone(), &self.grid(a.ring()));
        }
        Err(Error::Parse(format!("unknown binding `{}`", name)))
    }

    fn check_degree(&self, g: &ReesAlg) -> Result<()> {
        for (f, _) in g.gens() {
            if f.total_degree() > self.options.max_degree {
                return Err(Error::Parse(format!(
                    "generator degree {} exceeds --max-degree {}",
                    f.total_degree(),
                    self.options.max_degree
                )));
            }
        }
        Ok(())
    }

    fn bind_algebra(&mut self, name: &str, g: ReesAlg) -> Result<()> {
        self.check_degree(&g)?;
        self.algebras.insert(name.to_string(), g);
        Ok(())
    }

    fn exec(&mut self, line: &str) -> Result<String> {
        let (head, rest) = match line.split_once(char::is_whitespace) {
            Some((h, r)) => (h, r.trim()),
            None => (line, ""),
        };
        match head {
            "ring" => self.cmd_ring(rest),
            "rees" => self.cmd_rees(rest),
            "diffclose" => self.cmd_diffclose(rest),
            "reldiffclose" => self.cmd_reldiffclose(rest),
            "normalize" => self.cmd_normalize(rest),
            "twist" => self.cmd_twist(rest),
            "odot" => self.cmd_odot(rest),
            "linchange" => self.cmd_linchange(rest),
            "eliminate" => self.cmd_eliminate(rest),
            "chain" => self.cmd_chain(rest),
            "tilde" => self.cmd_tilde(rest),
            "blowup" => self.cmd_blowup(rest),
            "pairtransform" => self.cmd_pairtransform(rest),
            "assert" => self.cmd_assert(rest),
            "probe-grid" => self.cmd_probe_grid(rest),
            "lineage" => self.cmd_lineage(rest),
            // Bare queries print their canonical value.
            _ => {
                let value = self.eval_query(line)?;
                Ok(format!("{} = {}", line, value))
            }
        }
    }

    fn cmd_ring(&mut self, rest: &str) -> Result<String> {
        // ring R char 0 vars x y z
        let words: Vec<&str> = rest.split_whitespace().collect();
        let (name, tail) = words
            .split_first()
            .ok_or_else(|| Error::Parse("ring needs a name".into()))?;
        let char_pos = tail
            .iter()
            .position(|w| *w == "char")
            .ok_or_else(|| Error::Parse("ring needs `char <c>`".into()))?;
        let vars_pos = tail
            .iter()
            .position(|w| *w == "vars")
            .ok_or_else(|| Error::Parse("ring needs `vars <names>`".into()))?;
        let c: u64 = tail
            .get(char_pos + 1)
            .ok_or_else(|| Error::Parse("missing characteristic".into()))?
            .parse()
            .map_err(|_| Error::Parse("bad characteristic".into()))?;
        let names: Vec<String> = tail[vars_pos + 1..].iter().map(|s| s.to_string()).collect();
        let ring = Ring::new(FieldSpec::with_characteristic(c)?, names)?;
        let display = format!("ring {} = {}", name, ring);
        self.rings.insert(name.to_string(), ring);
        Ok(display)
    }

    fn cmd_rees(&mut self, rest: &str) -> Result<String> {
        // rees G in R := 2: poly; 1: poly
        let (lhs, rhs) = rest
            .split_once(":=")
            .ok_or_else(|| Error::Parse("rees needs `:=`".into()))?;
        let words: Vec<&str> = lhs.split_whitespace().collect();
        let (name, ring_name) = match words.as_slice() {
            [name, "in", ring] => (*name, *ring),
            _ => return Err(Error::Parse("usage: rees G in R := w: poly; ...".into())),
        };
        let ring = self.ring_named(ring_name)?.clone();
        let mut gens = Vec::new();
        for part in rhs.split(';') {
            let part = part.trim();
            if part.is_empty() {
                continue;
            }
            let (w, poly) = part
                .split_once(':')
                .ok_or_else(|| Error::Parse(format!("generator `{}` needs `w:`", part)))?;
            gens.push((parse_poly(&ring, poly)?, parse_weight(w)?));
        }
        let g = ReesAlg::new(&ring, gens)?;
        let display = format!("rees {} := {}", name, gens_text(&g));
        self.bind_algebra(name, g)?;
        Ok(display)
    }

    fn cmd_diffclose(&mut self, rest: &str) -> Result<String> {
        let (name, src) = parse_binding(rest)?;
        let (closed, units) = self.algebra_of(&src)?.diff_closure_with_units()?;
        let mut display = format!("diffclose {} := {}", name, gens_text(&closed));
        if !units.is_empty() {
            let _ = write!(
                display,
                "  [pruned {} unit derivative(s): singular locus is empty]",
                units.len()
            );
        }
        self.bind_algebra(&name, closed)?;
        Ok(display)
    }

    fn cmd_reldiffclose(&mut self, rest: &str) -> Result<String> {
        // reldiffclose D = G var Z
        let (name, tail) = parse_binding(rest)?;
        let words: Vec<&str> = tail.split_whitespace().collect();
        let (src, var) = match words.as_slice() {
            [src, "var", v] => (*src, *v),
            _ => return Err(Error::Parse("usage: reldiffclose D = G var Z".into())),
        };
        let g = self.algebra_of(src)?;
        let idx = g.ring().var_index(var)?;
        let closed = g.rel_diff_closure(idx)?;
        let display = format!("reldiffclose {} := {}", name, gens_text(&closed));
        self.bind_algebra(&name, closed)?;
        Ok(display)
    }

    fn cmd_normalize(&mut self, rest: &str) -> Result<String> {
        let (name, src) = parse_binding(rest)?;
        let n = self.algebra_of(&src)?.normalize_weights();
        let display = format!("normalize {} := {}", name, gens_text(&n));
        self.bind_algebra(&name, n)?;
        Ok(display)
    }

    fn cmd_twist(&mut self, rest: &str) -> Result<String> {
        // twist T = G by 3/2
        let (name, tail) = parse_binding(rest)?;
        let (src, omega) = tail
            .split_once(" by ")
            .ok_or_else(|| Error::Parse("usage: twist T = G by w".into()))?;
        let t = self.algebra_of(src.trim())?.twist(parse_weight(omega)?)?;
        let display = format!("twist {} := {}", name, gens_text(&t));
        self.bind_algebra(&name, t)?;
        Ok(display)
    }

    fn cmd_odot(&mut self, rest: &str) -> Result<String> {
        let (name, tail) = parse_binding(rest)?;
        let words: Vec<&str> = tail.split_whitespace().collect();
        let [a, b] = words.as_slice() else {
            return Err(Error::Parse("usage: odot J = G1 G2".into()));
        };
        let j = self.algebra_of(a)?.odot(&self.algebra_of(b)?)?;
        let display = format!("odot {} := {}", name, gens_text(&j));
        self.bind_algebra(&name, j)?;
        Ok(display)
    }

    fn cmd_linchange(&mut self, rest: &str) -> Result<String> {
        // linchange L = G matrix [[0,1],[1,0]] shift (0,0)
        let (name, tail) = parse_binding(rest)?;
        let matrix_pos = tail
            .find(" matrix ")
            .ok_or_else(|| Error::Parse("linchange needs `matrix [[..]]`".into()))?;
        let src = tail[..matrix_pos].trim();
        let after = &tail[matrix_pos + 8..];
        let shift_pos = after
            .find(" shift ")
            .ok_or_else(|| Error::Parse("linchange needs `shift (..)`".into()))?;
        let matrix_text = after[..shift_pos].trim();
        let shift_text = after[shift_pos + 7..].trim();
        let g = self.algebra_of(src)?;
        let ring = g.ring().clone();
        let matrix = parse_matrix(&ring, matrix_text)?;
        let shift = parse_point(&ring, shift_text)?;
        let gens = g
            .gens()
            .iter()
            .map(|(f, w)| Ok((f.linear_change(&matrix, &shift)?, *w)))
            .collect::<Result<Vec<_>>>()?;
        let changed = ReesAlg::new(&ring, gens)?;
        let display = format!("linchange {} := {}", name, gens_text(&changed));
        self.bind_algebra(&name, changed)?;
        Ok(display)
    }

    fn cmd_eliminate(&mut self, rest: &str) -> Result<String> {
        // eliminate E = G var Z at (0,0,0) [mode charpoly-all] [via N]
        let (name, tail) = parse_binding(rest)?;
        let words: Vec<&str> = tail.split_whitespace().collect();
        let src = words
            .first()
            .ok_or_else(|| Error::Parse("eliminate needs a source".into()))?;
        let g = self.algebra_of(src)?;
        let var_name = keyword_value(&words, "var")
            .ok_or_else(|| Error::Parse("eliminate needs `var <name>`".into()))?;
        let var = g.ring().var_index(&var_name)?;
        let mode = match keyword_value(&words, "mode").as_deref() {
            None | Some("passthrough") => ElimMode::Passthrough,
            Some("charpoly-all") => ElimMode::CharpolyAll,
            Some(other) => return Err(Error::Parse(format!("unknown mode `{}`", other))),
        };
        let t = if let Some(idx) = keyword_value(&words, "via") {
            let idx: usize = idx
                .parse()
                .map_err(|_| Error::Parse("bad generator index".into()))?;
            Transversal::from_generator(&g, idx, var)?
        } else {
            let at = keyword_value(&words, "at")
                .ok_or_else(|| Error::Parse("eliminate needs `at (point)` or `via <gen>`".into()))?;
            let point = parse_point(g.ring(), &at)?;
            let mut cands = transversal_candidates(&g, &point, var)?;
            if cands.is_empty() {
                return Err(Error::NoTransversal {
                    stage: 0,
                    var: var_name,
                });
            }
            cands.remove(0)
        };
        let r = eliminate(&g, &t, mode)?;
        let display = format!("eliminate {} := {}", name, gens_text(&r));
        self.bind_algebra(&name, r)?;
        Ok(display)
    }

    fn cmd_chain(&mut self, rest: &str) -> Result<String> {
        // chain C = G vars Z W at (0,0,0)
        let (name, tail) = parse_binding(rest)?;
        let words: Vec<&str> = tail.split_whitespace().collect();
        let src = words
            .first()
            .ok_or_else(|| Error::Parse("chain needs a source".into()))?;
        let vars_pos = words
            .iter()
            .position(|w| *w == "vars")
            .ok_or_else(|| Error::Parse("chain needs `vars <names>`".into()))?;
        let at_pos = words
            .iter()
            .position(|w| *w == "at")
            .ok_or_else(|| Error::Parse("chain needs `at (point)`".into()))?;
        let var_names: Vec<String> = words[vars_pos + 1..at_pos]
            .iter()
            .map(|s| s.to_string())
            .collect();
        let g = self.algebra_of(src)?;
        let point = parse_point(g.ring(), &words[at_pos + 1..].join(""))?;
        let chain = eliminate_chain(&g, &point, &var_names)?;
        let final_algebra = chain.final_algebra(&g).clone();
        let object = if self.objects.contains_key(*src) {
            let b = self.object_of(src)?;
            let down_ring = chain.final_algebra(&g).ring().clone();
            Some(chain_object(&b, &chain, &self.grid(&down_ring))?)
        } else {
            None
        };
        let display = format!(
            "chain {} := {} stage(s)\n{}",
            name,
            chain.len(),
            chain_to_text(&chain).trim_end()
        );
        self.chains.insert(
            name,
            ChainVal {
                final_algebra,
                object,
            },
        );
        Ok(display)
    }

    fn cmd_tilde(&mut self, rest: &str) -> Result<String> {
        // tilde T = G m 1 at (0,0,0)
        let (name, tail) = parse_binding(rest)?;
        let words: Vec<&str> = tail.split_whitespace().collect();
        let src = words
            .first()
            .ok_or_else(|| Error::Parse("tilde needs a source".into()))?;
        let m: u32 = keyword_value(&words, "m")
            .ok_or_else(|| Error::Parse("tilde needs `m <depth>`".into()))?
            .parse()
            .map_err(|_| Error::Parse("bad depth".into()))?;
        let at = keyword_value(&words, "at")
            .ok_or_else(|| Error::Parse("tilde needs `at (point)`".into()))?;
        let g = self.algebra_of(src)?;
        let point = parse_point(g.ring(), &at)?;
        let t = tilde(&g, &point, m)?;
        let display = format!("tilde {} := {}", name, gens_text(&t));
        self.bind_algebra(&name, t)?;
        Ok(display)
    }

    fn cmd_blowup(&mut self, rest: &str) -> Result<String> {
        // blowup B1 = B center (X,Y,Z) chart Y
        let (name, tail) = parse_binding(rest)?;
        let words: Vec<&str> = tail.split_whitespace().collect();
        let src = words
            .first()
            .ok_or_else(|| Error::Parse("blowup needs a source".into()))?;
        let center_text = keyword_value(&words, "center")
            .ok_or_else(|| Error::Parse("blowup needs `center (vars)`".into()))?;
        let chart = keyword_value(&words, "chart")
            .ok_or_else(|| Error::Parse("blowup needs `chart <var>`".into()))?;
        let b = self.object_of(src)?;
        let ring = b.ring().clone();
        let center = parse_center(&ring, &center_text)?;
        let chart_var = ring.var_index(&chart)?;
        let out = blowup_chart(&b, &center, chart_var, &self.grid(&ring))?;
        let display = format!(
            "blowup {} := {} divisors {:?} max-w-ord {}",
            name,
            gens_text(&out.algebra),
            out.divisors
                .iter()
                .map(|d| format!("{}@{}", ring.var_name(d.var), d.birth_stage))
                .collect::<Vec<_>>(),
            rat_text(*out.word_history.last().expect("recorded")),
        );
        self.lineage.insert(
            name.clone(),
            LineageNode {
                name: name.clone(),
                parent: Some(src.to_string()),
                center: Some(
                    center
                        .vars
                        .iter()
                        .map(|&v| ring.var_name(v).to_string())
                        .collect(),
                ),
                chart: Some(chart),
            },
        );
        self.objects.insert(name, out);
        Ok(display)
    }

    fn cmd_pairtransform(&mut self, rest: &str) -> Result<String> {
        // pairtransform P1 = P center (x,y,z) chart y
        let (name, tail) = parse_binding(rest)?;
        let words: Vec<&str> = tail.split_whitespace().collect();
        let src = words
            .first()
            .ok_or_else(|| Error::Parse("pairtransform needs a source".into()))?;
        let center_text = keyword_value(&words, "center")
            .ok_or_else(|| Error::Parse("pairtransform needs `center (vars)`".into()))?;
        let chart = keyword_value(&words, "chart")
            .ok_or_else(|| Error::Parse("pairtransform needs `chart <var>`".into()))?;
        let g = self.algebra_of(src)?;
        if g.gens().len() != 1 {
            return Err(Error::Parse(
                "pairtransform acts on single-generator bindings (a pair (J, b))".into(),
            ));
        }
        let (j, w) = &g.gens()[0];
        if *w.denom() != 1 {
            return Err(Error::NonIntegerWeights);
        }
        let ring = g.ring().clone();
        let center = parse_center(&ring, &center_text)?;
        let chart_var = ring.var_index(&chart)?;
        let j1 = pair_transform(j, *w.numer() as u32, &center, chart_var)?;
        let out = ReesAlg::new(&ring, vec![(j1, *w)])?;
        let display = format!("pairtransform {} := {}", name, gens_text(&out));
        self.bind_algebra(&name, out)?;
        Ok(display)
    }

    fn cmd_assert(&mut self, rest: &str) -> Result<String> {
        let (query, expected) = rest
            .rsplit_once("==")
            .ok_or_else(|| Error::Parse("assert needs `== <expected>`".into()))?;
        let query = query.trim();
        let expected = expected.trim();
        self.report.asserts += 1;
        let outcome = match self.compare_query(query, expected) {
            Ok(true) => {
                self.report.records.push(json!({
                    "kind": "assert", "query": query, "expected": expected, "pass": true,
                }));
                return Ok(format!("assert {} == {} : PASS", query, expected));
            }
            Ok(false) => None,
            Err(e) => Some(e),
        };
        self.report.failures += 1;
        let actual = match &outcome {
            Some(e) => format!("error: {}", e),
            None => self.eval_query(query).unwrap_or_default(),
        };
        self.report.records.push(json!({
            "kind": "assert", "query": query, "expected": expected,
            "pass": false, "actual": actual,
        }));
        Ok(format!(
            "assert {} == {} : FAIL (got {})",
            query, expected, actual
        ))
    }

    /// Structural comparison for generator-list queries, whitespace-blind
    /// text comparison for everything else.
    fn compare_query(&mut self, query: &str, expected: &str) -> Result<bool> {
        let words: Vec<&str> = query.split_whitespace().collect();
        if words.first() == Some(&"gens") {
            let name = words
                .get(1)
                .ok_or_else(|| Error::Parse("gens needs a binding".into()))?;
            let g = self.algebra_of(name)?;
            let want = parse_gen_list(g.ring(), expected)?;
            return Ok(g.gens() == want.as_slice());
        }
        let actual = self.eval_query(query)?;
        let norm = |s: &str| s.chars().filter(|c| !c.is_whitespace()).collect::<String>();
        Ok(norm(&actual) == norm(expected))
    }

    fn eval_query(&mut self, query: &str) -> Result<String> {
        let words: Vec<&str> = query.split_whitespace().collect();
        let head = *words
            .first()
            .ok_or_else(|| Error::Parse("empty query".into()))?;
        match head {
            "ord" => {
                let (g, p) = self.algebra_at(&words)?;
                Ok(rat_text(g.ord_at(&p)?))
            }
            "sing?" => {
                let (g, p) = self.algebra_at(&words)?;
                Ok(g.is_singular_at(&p)?.to_string())
            }
            "singgens" => {
                let g = self.algebra_of(words.get(1).ok_or_else(usage_err)?)?;
                let pres = g.sing_presentation()?;
                let lines: Vec<String> = pres.gens.iter().map(|p| p.to_string()).collect();
                Ok(lines.join("; "))
            }
            "tau" => {
                let (g, p) = self.algebra_at(&words)?;
                let tau = tau_at(&g, &p)?;
                let cert: Vec<String> = tau
                    .certificate
                    .iter()
                    .map(|(l, e)| format!("{} @ {}", l, e))
                    .collect();
                Ok(format!("{} [{}]", tau.tau, cert.join(", ")))
            }
            "word" => {
                let (b, p) = self.object_at(&words)?;
                Ok(rat_text(w_ord(&b, &p)?))
            }
            "tfn" => {
                let (b, p) = self.object_at(&words)?;
                Ok(t_fn(&b, &p)?.to_string())
            }
            "gamma" => {
                let (g, p) = self.algebra_at(&words)?;
                Ok(gamma(&g, &p)?.to_string())
            }
            "monomial?" => {
                let name = words.get(1).ok_or_else(usage_err)?;
                let b = self.object_of(name)?;
                let origin = PointSpec::origin(b.ring());
                let mut probes = vec![origin];
                if let Some(pos) = words.iter().position(|w| *w == "probes") {
                    let text = words[pos + 1..].join("");
                    for part in text.split(")(") {
                        probes.push(parse_point(b.ring(), part)?);
                    }
                }
                let report = monomial_case(&b, &probes)?;
                let mut expo = Vec::new();
                for factors in &report.exponents {
                    let parts: Vec<String> = factors
                        .iter()
                        .map(|(v, k)| format!("{}^{}", v, k))
                        .collect();
                    expo.push(parts.join(" "));
                }
                Ok(format!(
                    "{} [{}]",
                    report.monomial,
                    expo.join("; ")
                ))
            }
            "gens" => {
                let g = self.algebra_of(words.get(1).ok_or_else(usage_err)?)?;
                Ok(gens_text(&g))
            }
            "contains" | "contains-assoc" => {
                let name = words.get(1).ok_or_else(usage_err)?;
                let g = self.algebra_of(name)?;
                // Everything after the head and the binding name.
                let spec = query
                    .splitn(3, char::is_whitespace)
                    .nth(2)
                    .unwrap_or_default()
                    .trim();
                let (w, poly) = spec
                    .split_once(':')
                    .ok_or_else(|| Error::Parse("contains needs `w: poly`".into()))?;
                let want = parse_poly(g.ring(), poly)?;
                let w = parse_weight(w)?;
                let hit = g.gens().iter().any(|(f, v)| {
                    *v == w
                        && if head == "contains" {
                            f == &want
                        } else {
                            f.monic() == want.monic()
                        }
                });
                Ok(hit.to_string())
            }
            other => Err(Error::Parse(format!("unknown query `{}`", other))),
        }
    }

    fn algebra_at(&self, words: &[&str]) -> Result<(ReesAlg, PointSpec)> {
        let name = words.get(1).ok_or_else(usage_err)?;
        let g = self.algebra_of(name)?;
        let at = keyword_value(words, "at").ok_or_else(|| Error::Parse("needs `at (p)`".into()))?;
        let p = parse_point(g.ring(), &at)?;
        Ok((g, p))
    }

    fn object_at(&self, words: &[&str]) -> Result<(BasicObject, PointSpec)> {
        let name = words.get(1).ok_or_else(usage_err)?;
        let b = self.object_of(name)?;
        let at = keyword_value(words, "at").ok_or_else(|| Error::Parse("needs `at (p)`".into()))?;
        let p = parse_point(b.ring(), &at)?;
        Ok((b, p))
    }

    fn cmd_probe_grid(&mut self, rest: &str) -> Result<String> {
        // probe-grid NAME: one row per singular probe point.
        let name = rest
            .split_whitespace()
            .next()
            .ok_or_else(|| Error::Parse("probe-grid needs a binding".into()))?;
        let b = self.object_of(name)?;
        let ring = b.ring().clone();
        let mut rows = vec![vec![
            "point".to_string(),
            "ord".to_string(),
            "w-ord".to_string(),
            "t".to_string(),
            "gamma".to_string(),
            "tau".to_string(),
        ]];
        for p in self.grid(&ring) {
            if !b.algebra.is_singular_at(&p)? {
                continue;
            }
            let ord = rat_text(b.algebra.ord_at(&p)?);
            let word = rat_text(w_ord(&b, &p)?);
            let t = t_fn(&b, &p)?.to_string();
            let gv = match gamma(&b.algebra, &p) {
                Ok(v) => v.to_string(),
                Err(_) => "-".to_string(),
            };
            let tv = match b
                .algebra
                .diff_closure()
                .and_then(|d| tau_at(&d, &p))
            {
                Ok(t) => t.tau.to_string(),
                Err(_) => "-".to_string(),
            };
            self.report.records.push(json!({
                "kind": "stratum", "binding": name, "point": p.format(&ring),
                "ord": ord, "w_ord": word, "t": t, "gamma": gv, "tau": tv,
            }));
            rows.push(vec![p.format(&ring), ord, word, t, gv, tv]);
        }
        Ok(format!(
            "probe-grid {}\n{}",
            name,
            table_to_text(&rows).trim_end()
        ))
    }

    fn cmd_lineage(&mut self, rest: &str) -> Result<String> {
        let name = rest
            .split_whitespace()
            .next()
            .ok_or_else(|| Error::Parse("lineage needs a binding".into()))?;
        // Walk to the root.
        let mut path: Vec<(LineageNode, BasicObject)> = Vec::new();
        let mut cur = Some(name.to_string());
        while let Some(n) = cur {
            let node = self.lineage.get(&n).cloned().unwrap_or(LineageNode {
                name: n.clone(),
                parent: None,
                center: None,
                chart: None,
            });
            let object = self.object_of(&n)?;
            cur = node.parent.clone();
            path.push((node, object));
        }
        path.reverse();
        Ok(format!(
            "lineage {}\n{}",
            name,
            lineage_to_text(&path).trim_end()
        ))
    }
}

fn usage_err() -> Error {
    Error::Parse("query needs a binding name".into())
}

fn parse_binding(rest: &str) -> Result<(String, String)> {
    let (name, tail) = rest
        .split_once('=')
        .ok_or_else(|| Error::Parse("expected `NAME = ...`".into()))?;
    Ok((name.trim().to_string(), tail.trim().to_string()))
}

fn keyword_value(words: &[&str], key: &str) -> Option<String> {
    let pos = words.iter().position(|w| *w == key)?;
    // Parenthesized values may span words.
    let first = words.get(pos + 1)?;
    if first.starts_with('(') {
        let mut acc = String::new();
        for w in &words[pos + 1..] {
            acc.push_str(w);
            if w.ends_with(')') {
                break;
            }
        }
        Some(acc)
    } else {
        Some((*first).to_string())
    }
}

fn parse_point(ring: &Arc<Ring>, text: &str) -> Result<PointSpec> {
    let inner = text
        .trim()
        .strip_prefix('(')
        .and_then(|t| t.strip_suffix(')'))
        .ok_or_else(|| Error::Parse(format!("bad point `{}`", text)))?;
    let coords = inner
        .split(',')
        .map(|c| parse_scalar(ring, c.trim()))
        .collect::<Result<Vec<_>>>()?;
    PointSpec::new(ring, coords)
}

fn parse_center(ring: &Arc<Ring>, text: &str) -> Result<CenterSpec> {
    let inner = text
        .trim()
        .strip_prefix('(')
        .and_then(|t| t.strip_suffix(')'))
        .ok_or_else(|| Error::Parse(format!("bad center `{}`", text)))?;
    let vars = inner
        .split(',')
        .map(|v| ring.var_index(v.trim()))
        .collect::<Result<Vec<_>>>()?;
    CenterSpec::new(vars)
}

fn parse_matrix(ring: &Arc<Ring>, text: &str) -> Result<Vec<Vec<rees_core::Scalar>>> {
    let inner = text
        .trim()
        .strip_prefix('[')
        .and_then(|t| t.strip_suffix(']'))
        .ok_or_else(|| Error::Parse("matrix needs [[..],[..]]".into()))?;
    let mut rows = Vec::new();
    for row in inner.split("],") {
        let row = row.trim().trim_start_matches('[').trim_end_matches(']');
        let cells = row
            .split(',')
            .map(|c| parse_scalar(ring, c.trim()))
            .collect::<Result<Vec<_>>>()?;
        rows.push(cells);
    }
    Ok(rows)
}

fn parse_gen_list(ring: &Arc<Ring>, text: &str) -> Result<Vec<(Poly, Rat)>> {
    let mut out = Vec::new();
    for part in text.split(';') {
        let part = part.trim();
        if part.is_empty() {
            continue;
        }
        let (w, poly) = part
            .split_once(':')
            .ok_or_else(|| Error::Parse(format!("generator `{}` needs `w:`", part)))?;
        out.push((parse_poly(ring, poly)?, parse_weight(w)?));
    }
    Ok(out)
}

fn rat_text(r: Rat) -> String {
    if *r.denom() == 1 {
        format!("{}", r.numer())
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

fn gens_text(g: &ReesAlg) -> String {
    let parts: Vec<String> = g
        .gens()
        .iter()
        .map(|(f, w)| format!("{}: {}", rat_text(*w), f))
        .collect();
    format!("[{}]", parts.join("; "))
}

/// Runs a script from text with the given options.
pub fn run_script(script: &str, options: Options) -> Report {
    Session::new(options).run(script)
}
