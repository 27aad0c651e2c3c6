//! `mg`: inspect, transform and export monograph documents.
//!
//! Every subcommand reads one document file and either prints a
//! diagnostic or writes a new self-contained document (stdout or `-o`).
//! Exit codes: 0 success, 1 validation or precondition failure, 2 usage
//! or parse error. Set `MG_COLOR=1` to colorize diagnostics.

use std::collections::{BTreeMap, BTreeSet};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use monogr::doc::{DocAlgebra, DocError, DocMorphism, Document};
use monogr::export::{export_dot, export_tikz};
use monogr::limits;
use monogr::rewriting::{self, SpanRule};
use monogr::signature::{algebra_of_typed, sig_of_monograph, type_monograph_of_sig};
use monogr::{attributed, enumerate_morphisms, find_isomorphism, Monograph, Morphism};

#[derive(Parser)]
#[command(name = "mg", version, about = "Monograph toolbox")]
struct Cli {
    /// Seed for subcommands that use randomized helpers.
    #[arg(long, global = true)]
    seed: Option<u64>,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Parse a document and re-check every item.
    Validate { file: PathBuf },
    /// Report totality, injectivity and surjectivity of a morphism.
    CheckMorphism { file: PathBuf, name: String },
    /// Enumerate all morphisms between two monographs.
    Morphisms {
        file: PathBuf,
        dom: String,
        cod: String,
        #[arg(long)]
        limit: Option<usize>,
        #[arg(short, long)]
        out: Option<PathBuf>,
    },
    /// Find an isomorphism between two monographs.
    Iso {
        file: PathBuf,
        a: String,
        b: String,
        #[arg(short, long)]
        out: Option<PathBuf>,
    },
    /// Disjoint union with injections `inl`, `inr`.
    Coproduct {
        file: PathBuf,
        a: String,
        b: String,
        #[arg(short, long)]
        out: Option<PathBuf>,
    },
    /// Product with projections `fst`, `snd`.
    Product {
        file: PathBuf,
        a: String,
        b: String,
        #[arg(short, long)]
        out: Option<PathBuf>,
    },
    /// Coequalizer `q` of a parallel pair.
    Coequalizer {
        file: PathBuf,
        f: String,
        g: String,
        #[arg(short, long)]
        out: Option<PathBuf>,
    },
    /// Equalizer `e` of a parallel pair.
    Equalizer {
        file: PathBuf,
        f: String,
        g: String,
        #[arg(short, long)]
        out: Option<PathBuf>,
    },
    /// Pushout of a span, with legs `pleft`, `pright`.
    Pushout {
        file: PathBuf,
        f: String,
        g: String,
        #[arg(short, long)]
        out: Option<PathBuf>,
    },
    /// Pullback of a cospan, with legs `pleft`, `pright`.
    Pullback {
        file: PathBuf,
        f: String,
        g: String,
        #[arg(short, long)]
        out: Option<PathBuf>,
    },
    /// The terminal standard monograph for a trace set.
    Terminal {
        /// Comma-separated lengths, e.g. `0,2`.
        #[arg(long)]
        trace: String,
        #[arg(short, long)]
        out: Option<PathBuf>,
    },
    /// Check the gluing condition for `l : K -> L` and a match `m`.
    Gluing { file: PathBuf, l: String, m: String },
    /// Pushout complement `context` with `embed` and `include`.
    #[command(name = "po-complement")]
    PoComplement {
        file: PathBuf,
        l: String,
        m: String,
        #[arg(short, long)]
        out: Option<PathBuf>,
    },
    /// Apply a rule by double pushout.
    Dpo {
        file: PathBuf,
        rule: String,
        #[command(flatten)]
        matching: Matching,
        #[arg(short, long)]
        out: Option<PathBuf>,
    },
    /// Apply a rule by single pushout (cascade deletion allowed).
    Spo {
        file: PathBuf,
        rule: String,
        #[command(flatten)]
        matching: Matching,
        #[arg(short, long)]
        out: Option<PathBuf>,
    },
    /// Synthesize the type monograph of a monadic signature.
    #[command(name = "sig2type")]
    Sig2Type {
        file: PathBuf,
        sig: String,
        /// Per-sort operator order, e.g. `--order nodes=src,tgt`.
        #[arg(long)]
        order: Vec<String>,
        #[arg(short, long)]
        out: Option<PathBuf>,
    },
    /// The signature of a type monograph.
    #[command(name = "type2sig")]
    Type2Sig {
        file: PathBuf,
        t: String,
        #[arg(short, long)]
        out: Option<PathBuf>,
    },
    /// The algebra of a typed monograph (a morphism into the type).
    #[command(name = "typed2alg")]
    Typed2Alg {
        file: PathBuf,
        typing: String,
        #[arg(short, long)]
        out: Option<PathBuf>,
    },
    /// The typed monograph of an algebra over a type's signature.
    #[command(name = "alg2typed")]
    Alg2Typed {
        file: PathBuf,
        algebra: String,
        t: String,
        #[arg(short, long)]
        out: Option<PathBuf>,
    },
    /// Validate an attributed typed monograph.
    AtmCheck {
        file: PathBuf,
        typing: String,
        algebra: String,
    },
    /// GraphViz rendering (approximate: arc labels carry positions).
    ExportDot {
        file: PathBuf,
        a: String,
        #[arg(long)]
        typing: Option<String>,
        #[arg(short, long)]
        out: Option<PathBuf>,
    },
    /// TikZ rendering with multi-tip arrows.
    ExportTikz {
        file: PathBuf,
        a: String,
        #[arg(long)]
        typing: Option<String>,
        #[arg(short, long)]
        out: Option<PathBuf>,
    },
}

#[derive(clap::Args)]
struct Matching {
    /// Use a morphism declared in the file as the match.
    #[arg(long, group = "match_sel")]
    r#match: Option<String>,
    /// Enumerate matches into `--host` and pick the k-th.
    #[arg(long, group = "match_sel", requires = "host")]
    match_index: Option<usize>,
    /// Apply at every match into `--host`.
    #[arg(long, group = "match_sel", requires = "host")]
    all: bool,
    /// Host monograph for `--match-index` and `--all`.
    #[arg(long)]
    host: Option<String>,
}

enum AppError {
    /// Exit 1: the input parsed but a check or precondition failed.
    Fail(String),
    /// Exit 2: unusable input (syntax error, missing file, bad flags).
    Usage(String),
}

impl From<DocError> for AppError {
    fn from(e: DocError) -> AppError {
        match e {
            DocError::Syntax { .. } => AppError::Usage(e.to_string()),
            _ => AppError::Fail(e.to_string()),
        }
    }
}

fn fail(e: impl std::fmt::Display) -> AppError {
    AppError::Fail(e.to_string())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.cmd) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            let (msg, code) = match e {
                AppError::Fail(m) => (m, 1),
                AppError::Usage(m) => (m, 2),
            };
            let color = std::env::var("MG_COLOR").map(|v| v == "1").unwrap_or(false);
            if color {
                eprintln!("\x1b[31merror:\x1b[0m {}", msg);
            } else {
                eprintln!("error: {}", msg);
            }
            ExitCode::from(code)
        }
    }
}

fn load(file: &PathBuf) -> Result<Document, AppError> {
    let text = std::fs::read_to_string(file)
        .map_err(|e| AppError::Usage(format!("cannot read {}: {}", file.display(), e)))?;
    Ok(Document::parse(&text)?)
}

fn emit(text: &str, out: &Option<PathBuf>) -> Result<(), AppError> {
    match out {
        Some(path) => std::fs::write(path, text)
            .map_err(|e| AppError::Usage(format!("cannot write {}: {}", path.display(), e))),
        None => {
            print!("{}", text);
            Ok(())
        }
    }
}

/// A name not yet used by any monograph in the document.
fn fresh(doc: &Document, base: &str) -> String {
    let mut name = base.to_string();
    while doc.monographs.contains_key(&name)
        || doc.morphisms.contains_key(&name)
        || doc.signatures.contains_key(&name)
        || doc.algebras.contains_key(&name)
    {
        name.push('\'');
    }
    name
}

fn doc_morphism(f: &Morphism, dom: &str, cod: &str) -> DocMorphism {
    DocMorphism {
        dom: dom.to_string(),
        cod: cod.to_string(),
        map: f
            .map()
            .iter()
            .map(|(k, v)| (k.to_string(), v.to_string()))
            .collect(),
    }
}

/// Copies a declared morphism and its two monographs into `out`.
fn copy_morphism(doc: &Document, out: &mut Document, name: &str) -> Result<(), AppError> {
    let decl = doc
        .morphisms
        .get(name)
        .ok_or_else(|| fail(format!("morphism `{}` is not declared", name)))?;
    out.monographs
        .insert(decl.dom.clone(), doc.monograph(&decl.dom)?.clone());
    out.monographs
        .insert(decl.cod.clone(), doc.monograph(&decl.cod)?.clone());
    out.morphisms.insert(name.to_string(), decl.clone());
    Ok(())
}

fn parallel_pair(
    doc: &Document,
    f: &str,
    g: &str,
) -> Result<(Morphism, Morphism, String, String), AppError> {
    let fd = doc
        .morphisms
        .get(f)
        .ok_or_else(|| fail(format!("morphism `{}` is not declared", f)))?;
    let gd = doc
        .morphisms
        .get(g)
        .ok_or_else(|| fail(format!("morphism `{}` is not declared", g)))?;
    Ok((
        doc.morphism(f)?,
        doc.morphism(g)?,
        fd.dom.clone(),
        fd.cod.clone(),
    ))
    .and_then(|r| {
        if fd.dom == gd.dom && fd.cod == gd.cod {
            Ok(r)
        } else {
            Err(fail(format!("`{}` and `{}` are not a parallel pair", f, g)))
        }
    })
}

fn matches_for(
    doc: &Document,
    rule: &SpanRule,
    sel: &Matching,
) -> Result<(String, Monograph, Vec<Morphism>), AppError> {
    if let Some(name) = &sel.r#match {
        let decl = doc
            .morphisms
            .get(name)
            .ok_or_else(|| fail(format!("morphism `{}` is not declared", name)))?;
        let m = doc.morphism(name)?;
        if m.dom() != rule.left.cod() {
            return Err(fail(format!(
                "match `{}` does not start at the rule's left side",
                name
            )));
        }
        let host = m.cod().clone();
        return Ok((decl.cod.clone(), host, vec![m]));
    }
    let host_name = sel
        .host
        .as_ref()
        .ok_or_else(|| AppError::Usage("--match-index and --all need --host".into()))?;
    let host = doc.monograph(host_name)?.clone();
    let all = enumerate_morphisms(rule.left.cod(), &host, None);
    if sel.all {
        return Ok((host_name.clone(), host, all));
    }
    let k = sel
        .match_index
        .ok_or_else(|| AppError::Usage("pick --match, --match-index or --all".into()))?;
    let m = all.get(k).cloned().ok_or_else(|| {
        fail(format!(
            "only {} matches exist, index {} is out of range",
            all.len(),
            k
        ))
    })?;
    Ok((host_name.clone(), host, vec![m]))
}

fn run(cmd: Cmd) -> Result<(), AppError> {
    match cmd {
        Cmd::Validate { file } => {
            let doc = load(&file)?;
            println!(
                "ok: {} monographs, {} morphisms, {} rules, {} signatures, {} algebras",
                doc.monographs.len(),
                doc.morphisms.len(),
                doc.rules.len(),
                doc.signatures.len(),
                doc.algebras.len()
            );
            Ok(())
        }
        Cmd::CheckMorphism { file, name } => {
            let doc = load(&file)?;
            let f = doc.morphism(&name)?;
            let c = f.classify();
            println!(
                "{}: total morphism, injective={}, surjective={}, iso={}",
                name, c.injective, c.surjective, c.iso
            );
            Ok(())
        }
        Cmd::Morphisms {
            file,
            dom,
            cod,
            limit,
            out,
        } => {
            let doc = load(&file)?;
            let a = doc.monograph(&dom)?.clone();
            let b = doc.monograph(&cod)?.clone();
            let found = enumerate_morphisms(&a, &b, limit);
            let mut res = Document::default();
            res.monographs.insert(dom.clone(), a);
            res.monographs.insert(cod.clone(), b);
            for (i, f) in found.iter().enumerate() {
                res.morphisms
                    .insert(format!("f{}", i), doc_morphism(f, &dom, &cod));
            }
            eprintln!("{} morphisms {} -> {}", found.len(), dom, cod);
            emit(&res.serialize(), &out)
        }
        Cmd::Iso { file, a, b, out } => {
            let doc = load(&file)?;
            let ma = doc.monograph(&a)?.clone();
            let mb = doc.monograph(&b)?.clone();
            match find_isomorphism(&ma, &mb) {
                None => Err(fail(format!("`{}` and `{}` are not isomorphic", a, b))),
                Some(f) => {
                    let mut res = Document::default();
                    res.monographs.insert(a.clone(), ma);
                    res.monographs.insert(b.clone(), mb);
                    res.morphisms.insert("iso".into(), doc_morphism(&f, &a, &b));
                    emit(&res.serialize(), &out)
                }
            }
        }
        Cmd::Coproduct { file, a, b, out } => {
            let doc = load(&file)?;
            let ma = doc.monograph(&a)?.clone();
            let mb = doc.monograph(&b)?.clone();
            let (sum, inl, inr) = limits::coproduct(&ma, &mb);
            let sum_name = fresh(&doc, "sum");
            let mut res = Document::default();
            res.monographs.insert(a.clone(), ma);
            res.monographs.insert(b.clone(), mb);
            res.monographs.insert(sum_name.clone(), sum);
            res.morphisms
                .insert("inl".into(), doc_morphism(&inl, &a, &sum_name));
            res.morphisms
                .insert("inr".into(), doc_morphism(&inr, &b, &sum_name));
            emit(&res.serialize(), &out)
        }
        Cmd::Product { file, a, b, out } => {
            let doc = load(&file)?;
            let ma = doc.monograph(&a)?.clone();
            let mb = doc.monograph(&b)?.clone();
            let (prod, fst, snd) = limits::product(&ma, &mb);
            let prod_name = fresh(&doc, "prod");
            let mut res = Document::default();
            res.monographs.insert(a.clone(), ma);
            res.monographs.insert(b.clone(), mb);
            res.monographs.insert(prod_name.clone(), prod);
            res.morphisms
                .insert("fst".into(), doc_morphism(&fst, &prod_name, &a));
            res.morphisms
                .insert("snd".into(), doc_morphism(&snd, &prod_name, &b));
            emit(&res.serialize(), &out)
        }
        Cmd::Coequalizer { file, f, g, out } => {
            let doc = load(&file)?;
            let (mf, mg, _, cod) = parallel_pair(&doc, &f, &g)?;
            let (quot, q) = limits::coequalizer(&mf, &mg).map_err(fail)?;
            let quot_name = fresh(&doc, "quot");
            let mut res = Document::default();
            copy_morphism(&doc, &mut res, &f)?;
            copy_morphism(&doc, &mut res, &g)?;
            res.monographs.insert(quot_name.clone(), quot);
            res.morphisms
                .insert("q".into(), doc_morphism(&q, &cod, &quot_name));
            emit(&res.serialize(), &out)
        }
        Cmd::Equalizer { file, f, g, out } => {
            let doc = load(&file)?;
            let (mf, mg, dom, _) = parallel_pair(&doc, &f, &g)?;
            let (eq, e) = limits::equalizer(&mf, &mg).map_err(fail)?;
            let eq_name = fresh(&doc, "eq");
            let mut res = Document::default();
            copy_morphism(&doc, &mut res, &f)?;
            copy_morphism(&doc, &mut res, &g)?;
            res.monographs.insert(eq_name.clone(), eq);
            res.morphisms
                .insert("e".into(), doc_morphism(&e, &eq_name, &dom));
            emit(&res.serialize(), &out)
        }
        Cmd::Pushout { file, f, g, out } => {
            let doc = load(&file)?;
            let mf = doc.morphism(&f)?;
            let mg = doc.morphism(&g)?;
            let po = limits::pushout(&mf, &mg).map_err(fail)?;
            let fd = doc.morphisms.get(&f).unwrap();
            let gd = doc.morphisms.get(&g).unwrap();
            let apex = fresh(&doc, "po");
            let mut res = Document::default();
            copy_morphism(&doc, &mut res, &f)?;
            copy_morphism(&doc, &mut res, &g)?;
            res.monographs.insert(apex.clone(), po.apex);
            res.morphisms
                .insert("pleft".into(), doc_morphism(&po.left, &fd.cod, &apex));
            res.morphisms
                .insert("pright".into(), doc_morphism(&po.right, &gd.cod, &apex));
            emit(&res.serialize(), &out)
        }
        Cmd::Pullback { file, f, g, out } => {
            let doc = load(&file)?;
            let mf = doc.morphism(&f)?;
            let mg = doc.morphism(&g)?;
            let pb = limits::pullback(&mf, &mg).map_err(fail)?;
            let fd = doc.morphisms.get(&f).unwrap();
            let gd = doc.morphisms.get(&g).unwrap();
            let apex = fresh(&doc, "pb");
            let mut res = Document::default();
            copy_morphism(&doc, &mut res, &f)?;
            copy_morphism(&doc, &mut res, &g)?;
            res.monographs.insert(apex.clone(), pb.apex);
            res.morphisms
                .insert("pleft".into(), doc_morphism(&pb.left, &apex, &fd.dom));
            res.morphisms
                .insert("pright".into(), doc_morphism(&pb.right, &apex, &gd.dom));
            emit(&res.serialize(), &out)
        }
        Cmd::Terminal { trace, out } => {
            let lengths = trace
                .split(',')
                .filter(|s| !s.is_empty())
                .map(|s| {
                    s.trim()
                        .parse::<usize>()
                        .map_err(|_| AppError::Usage(format!("bad length `{}` in --trace", s)))
                })
                .collect::<Result<BTreeSet<usize>, _>>()?;
            let t = limits::terminal(&lengths);
            let mut res = Document::default();
            res.monographs.insert("terminal".into(), t);
            emit(&res.serialize(), &out)
        }
        Cmd::Gluing { file, l, m } => {
            let doc = load(&file)?;
            let ml = doc.morphism(&l)?;
            let mm = doc.morphism(&m)?;
            let report = rewriting::gluing_condition(&ml, &mm).map_err(fail)?;
            if report.holds {
                println!("gluing condition holds");
                Ok(())
            } else {
                for v in &report.violations {
                    eprintln!("violation: {:?}", v);
                }
                Err(fail("gluing condition violated"))
            }
        }
        Cmd::PoComplement { file, l, m, out } => {
            let doc = load(&file)?;
            let ml = doc.morphism(&l)?;
            let mm = doc.morphism(&m)?;
            let comp = rewriting::pushout_complement(&ml, &mm).map_err(fail)?;
            let ld = doc.morphisms.get(&l).unwrap();
            let md = doc.morphisms.get(&m).unwrap();
            let ctx = fresh(&doc, "context");
            let mut res = Document::default();
            copy_morphism(&doc, &mut res, &l)?;
            copy_morphism(&doc, &mut res, &m)?;
            res.monographs.insert(ctx.clone(), comp.context);
            res.morphisms
                .insert("embed".into(), doc_morphism(&comp.embed, &ld.dom, &ctx));
            res.morphisms
                .insert("include".into(), doc_morphism(&comp.include, &ctx, &md.cod));
            emit(&res.serialize(), &out)
        }
        Cmd::Dpo {
            file,
            rule,
            matching,
            out,
        } => {
            let doc = load(&file)?;
            let r = doc.rule(&rule)?;
            let (host_name, host, matches) = matches_for(&doc, &r, &matching)?;
            let single = matches.len() == 1;
            let mut res = Document::default();
            res.monographs.insert(host_name.clone(), host);
            for (i, m) in matches.iter().enumerate() {
                let app = rewriting::dpo_apply(&r, m).map_err(fail)?;
                let name = if single {
                    "result".to_string()
                } else {
                    format!("result{}", i)
                };
                res.monographs.insert(fresh(&res, &name), app.result);
            }
            emit(&res.serialize(), &out)
        }
        Cmd::Spo {
            file,
            rule,
            matching,
            out,
        } => {
            let doc = load(&file)?;
            let r = doc.rule(&rule)?;
            let (host_name, host, matches) = matches_for(&doc, &r, &matching)?;
            let pr = rewriting::span_to_partial(&r).map_err(fail)?;
            let single = matches.len() == 1;
            let mut res = Document::default();
            res.monographs.insert(host_name.clone(), host);
            for (i, m) in matches.iter().enumerate() {
                let app = rewriting::spo_apply(&pr, m).map_err(fail)?;
                let name = if single {
                    "result".to_string()
                } else {
                    format!("result{}", i)
                };
                res.monographs.insert(fresh(&res, &name), app.result);
            }
            emit(&res.serialize(), &out)
        }
        Cmd::Sig2Type {
            file,
            sig,
            order,
            out,
        } => {
            let doc = load(&file)?;
            let s = doc.signature(&sig)?.clone();
            let mut orderings: BTreeMap<String, Vec<String>> = BTreeMap::new();
            for entry in &order {
                let (sort, ops) = entry
                    .split_once('=')
                    .ok_or_else(|| AppError::Usage(format!("bad --order `{}`", entry)))?;
                orderings.insert(
                    sort.to_string(),
                    ops.split(',').map(|o| o.to_string()).collect(),
                );
            }
            let (t, witness) = type_monograph_of_sig(&s, &orderings).map_err(fail)?;
            let mut res = Document::default();
            res.signatures.insert(sig.clone(), s);
            res.monographs.insert(fresh(&res, "type"), t);
            let mut text = String::new();
            for (op, edge) in &witness {
                text.push_str(&format!("# witness: {} -> {}\n", op, edge));
            }
            text.push_str(&res.serialize());
            emit(&text, &out)
        }
        Cmd::Type2Sig { file, t, out } => {
            let doc = load(&file)?;
            let mt = doc.monograph(&t)?.clone();
            let sig = sig_of_monograph(&mt);
            let mut res = Document::default();
            res.monographs.insert(t.clone(), mt);
            res.signatures.insert(fresh(&res, "sig"), sig);
            emit(&res.serialize(), &out)
        }
        Cmd::Typed2Alg { file, typing, out } => {
            let doc = load(&file)?;
            let a = doc.morphism(&typing)?;
            let alg = algebra_of_typed(&a);
            let mut res = Document::default();
            copy_morphism(&doc, &mut res, &typing)?;
            let sig_name = fresh(&res, "sig");
            res.signatures.insert(sig_name.clone(), alg.sig().clone());
            res.algebras.insert(
                fresh(&res, "alg"),
                DocAlgebra {
                    sig: sig_name,
                    carriers: alg.carriers().clone(),
                    interps: alg.interps().clone(),
                },
            );
            emit(&res.serialize(), &out)
        }
        Cmd::Alg2Typed {
            file,
            algebra,
            t,
            out,
        } => {
            let doc = load(&file)?;
            let alg = doc.algebra(&algebra)?;
            let mt = doc.monograph(&t)?.clone();
            let typed = monogr::signature::typed_of_algebra(&alg, &mt).map_err(fail)?;
            let mut res = Document::default();
            res.monographs.insert(t.clone(), mt);
            let dom_name = fresh(&res, "typed");
            res.monographs.insert(dom_name.clone(), typed.dom().clone());
            res.morphisms
                .insert("typing".into(), doc_morphism(&typed, &dom_name, &t));
            emit(&res.serialize(), &out)
        }
        Cmd::AtmCheck {
            file,
            typing,
            algebra,
        } => {
            let doc = load(&file)?;
            let a = doc.morphism(&typing)?;
            let alg = doc.algebra(&algebra)?;
            let atm = attributed::atm_validate(&a, &alg).map_err(fail)?;
            let attrs: Vec<String> = atm.attributes().iter().map(|x| x.to_string()).collect();
            println!(
                "ok: shared sorts {:?}, attributes {:?}",
                atm.shared_sorts(),
                attrs
            );
            Ok(())
        }
        Cmd::ExportDot {
            file,
            a,
            typing,
            out,
        } => {
            let doc = load(&file)?;
            let m = doc.monograph(&a)?.clone();
            let ty = typing.as_ref().map(|n| doc.morphism(n)).transpose()?;
            emit(&export_dot(&m, ty.as_ref()), &out)
        }
        Cmd::ExportTikz {
            file,
            a,
            typing,
            out,
        } => {
            let doc = load(&file)?;
            let m = doc.monograph(&a)?.clone();
            let ty = typing.as_ref().map(|n| doc.morphism(n)).transpose()?;
            let text = export_tikz(&m, ty.as_ref()).map_err(fail)?;
            emit(&text, &out)
        }
    }
}
