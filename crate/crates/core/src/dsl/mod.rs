//! The `.qid` identity language.
//!
//! ```text
//! identity "prod_sin_diff" {
//!   vars: x, y;
//!   lhs: sinq(x + y) * sinq(x - y);
//!   rhs: sinq(x)^2 * cosq(y)^2 - cosq(x)^2 * sinq(y)^2;
//!   tags: consequence;
//! }
//! ```

mod ast;
mod corpus;
mod eval;
mod lexer;
mod parser;
mod pretty;

pub use ast::{Call, Expr, Func, IdentityDecl, Pos, TauSel};
pub use corpus::{BUILTIN_QID, ERRATA_QID, builtin_corpus, errata_corpus, load_corpus};
pub use eval::{Env, EvalOptions, bind, eval_expr, eval_sides};
pub use lexer::{Keyword, Tok, Token, tokenize};
pub use parser::{parse, parse_expr};
pub use pretty::pretty_file;
