use std::fmt::Write;

use super::{ConfAlgDef, Decl, SourceFile};
use crate::confalgebra::ConformalAlgebra;
use crate::confmap::{ConformalMap, ModuleMap};
use crate::confmodule::ModElement;
use crate::liealgebra::LieAlgebra;
use crate::Rational;

pub fn render_lie(name: &str, g: &LieAlgebra<Rational>) -> String {
    let names = g.names();
    let mut out = format!("liealg {name} {{\n    basis {};\n", names.join(", "));
    for i in 0..g.dim() {
        for j in i + 1..g.dim() {
            let v = ModElement::new(
                g.structure(i, j)
                    .iter()
                    .cloned()
                    .map(crate::exactpoly::Poly::constant)
                    .collect(),
            );
            if !v.is_zero() {
                let _ = writeln!(
                    out,
                    "    [{}, {}] = {};",
                    names[i],
                    names[j],
                    v.render(names)
                );
            }
        }
    }
    out.push_str("}\n");
    out
}

/// A `confalg` block listing the table. A current algebra is rendered as a
/// Lie algebra block named `{name}_lie` followed by `cur(...)` so that the
/// underlying Lie algebra survives a round trip.
pub fn render_confalg(name: &str, alg: &ConformalAlgebra<Rational>) -> String {
    if let Some(g) = alg.current_of() {
        if g.names() == alg.names() {
            let lie = format!("{name}_lie");
            return format!("{}confalg {name} = cur({lie});\n", render_lie(&lie, g));
        }
    }
    render_table(name, alg)
}

fn render_table(name: &str, alg: &ConformalAlgebra<Rational>) -> String {
    let names = alg.names();
    let mut out = format!("confalg {name} {{\n    generators {};\n", names.join(", "));
    for i in 0..alg.rank() {
        for j in 0..alg.rank() {
            // zero entries are written when the mirror would otherwise be filled in
            if !alg.entry(i, j).is_zero() || !alg.entry(j, i).is_zero() {
                let _ = writeln!(
                    out,
                    "    bracket [{} ~ {}] = {};",
                    names[i],
                    names[j],
                    alg.entry(i, j).render(names)
                );
            }
        }
    }
    out.push_str("}\n");
    out
}

fn render_body(
    kw: &str,
    name: &str,
    source: &str,
    target: &str,
    src_names: &[String],
    tgt_names: &[String],
    cols: &[ModElement<Rational>],
) -> String {
    let mut out = format!("{kw} {name} : {source} -> {target} {{\n");
    for (g, c) in src_names.iter().zip(cols) {
        let _ = writeln!(out, "    {g} |-> {};", c.render(tgt_names));
    }
    out.push_str("}\n");
    out
}

pub fn render_map(
    name: &str,
    source: (&str, &ConformalAlgebra<Rational>),
    target: (&str, &ConformalAlgebra<Rational>),
    map: &ConformalMap<Rational>,
) -> String {
    render_body(
        "map",
        name,
        source.0,
        target.0,
        source.1.names(),
        target.1.names(),
        map.columns(),
    )
}

pub fn render_modmap(
    name: &str,
    source: (&str, &ConformalAlgebra<Rational>),
    target: (&str, &ConformalAlgebra<Rational>),
    map: &ModuleMap<Rational>,
) -> String {
    render_body(
        "modmap",
        name,
        source.0,
        target.0,
        source.1.names(),
        target.1.names(),
        map.columns(),
    )
}

/// Renders every declaration in order; `cur` and `(+)` keep their short form.
pub fn render_file(file: &SourceFile) -> String {
    let alg = |n: &str| file.conf_algebra(n).expect("declared algebra");
    let mut blocks = Vec::new();
    for d in &file.declarations {
        blocks.push(match d {
            Decl::LieAlg { name, alg } => render_lie(name, alg),
            Decl::ConfAlg { name, def, alg } => match def {
                ConfAlgDef::Table => render_table(name, alg),
                ConfAlgDef::Cur(g) => format!("confalg {name} = cur({g});\n"),
                ConfAlgDef::Sum(a, b) => format!("confalg {name} = {a} (+) {b};\n"),
            },
            Decl::Map {
                name,
                source,
                target,
                map,
            } => render_map(name, (source, alg(source)), (target, alg(target)), map),
            Decl::ModMap {
                name,
                source,
                target,
                map,
            } => render_modmap(name, (source, alg(source)), (target, alg(target)), map),
        });
    }
    blocks.join("\n")
}
