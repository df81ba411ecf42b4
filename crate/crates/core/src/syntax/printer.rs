use super::Formula;

// Binding strength, loosest first.
const IFF: u8 = 1;
const IMP: u8 = 2;
const OR: u8 = 3;
const AND: u8 = 4;
const UNARY: u8 = 5;

fn prec(phi: &Formula) -> u8 {
    match phi {
        Formula::Iff(..) => IFF,
        Formula::Implies(..) => IMP,
        Formula::Or(..) => OR,
        Formula::And(..) => AND,
        _ => UNARY,
    }
}

/// Minimal-parenthesis rendering in the concrete syntax accepted by
/// [`super::parse`].
pub fn render(phi: &Formula) -> String {
    let mut out = String::new();
    write(phi, false, &mut out);
    out
}

/// Renders every binary subformula inside its own parentheses.
pub fn render_full(phi: &Formula) -> String {
    let mut out = String::new();
    write(phi, true, &mut out);
    out
}

fn child(phi: &Formula, min: u8, full: bool, out: &mut String) {
    let binary = prec(phi) < UNARY;
    if (full && binary) || prec(phi) < min {
        out.push('(');
        write(phi, full, out);
        out.push(')');
    } else {
        write(phi, full, out);
    }
}

fn prefix(op: &str, arg: &Formula, full: bool, out: &mut String) {
    out.push_str(op);
    // `[W] false` reads better than `[W]false`; everything else is tight.
    let spaced = op != "~" && matches!(arg, Formula::Top | Formula::Bot);
    if spaced {
        out.push(' ');
    }
    child(arg, UNARY, full, out);
}

fn infix(op: &str, a: &Formula, b: &Formula, left: u8, right: u8, full: bool, out: &mut String) {
    child(a, left, full, out);
    out.push(' ');
    out.push_str(op);
    out.push(' ');
    child(b, right, full, out);
}

fn write(phi: &Formula, full: bool, out: &mut String) {
    match phi {
        Formula::Atom(p) => out.push_str(&p.to_string()),
        Formula::EqConst => out.push('I'),
        Formula::Top => out.push_str("true"),
        Formula::Bot => out.push_str("false"),
        Formula::Not(a) => prefix("~", a, full, out),
        Formula::WBox(a) => prefix("[W]", a, full, out),
        Formula::WDia(a) => prefix("<W>", a, full, out),
        Formula::BBox(a) => prefix("[B]", a, full, out),
        Formula::BDia(a) => prefix("<B>", a, full, out),
        // `&` and `|` associate to the left, `->` and `<->` to the right.
        Formula::And(a, b) => infix("&", a, b, AND, UNARY, full, out),
        Formula::Or(a, b) => infix("|", a, b, OR, AND, full, out),
        Formula::Implies(a, b) => infix("->", a, b, OR, IMP, full, out),
        Formula::Iff(a, b) => infix("<->", a, b, IMP, IFF, full, out),
    }
}
