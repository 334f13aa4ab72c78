# -*- coding: utf-8 -*-
# License LGPL-3.0 or later (http://www.gnu.org/licenses/lgpl)
"""Parse and evaluate the analytic scalar expressions used to define the
transition map ``Phi``, the output map ``h`` and the output injection ``b``.

The grammar supports numeric literals, the variables of the expression,
``+ - * /``, ``^`` with a non-negative integer literal exponent and the
functions ``exp``, ``ln`` and ``sqrt``:

    >>> from obslin import expr
    >>> node = expr.parse('0.5*ln(1+x1+x2)+0.4*x2', 2)
    >>> expr.evaluate(node, [0.0, 0.0])
    0.0
    >>> expr.to_text(node)
    '0.5*ln(1.0+x1+x2)+0.4*x2'

Expressions are evaluated either over real points (:func:`evaluate`) or over
truncated Taylor series (:func:`series_eval`, :func:`evaluate_series`).
"""
import functools
import logging
import math

from lark import Lark, Transformer, v_args
from lark.exceptions import UnexpectedInput, VisitError

from obslin.error import DomainError, ParseError
from obslin.taylor import TruncatedSeries

logger = logging.getLogger(__name__)

GRAMMAR = r"""
    ?start: sum

    ?sum: product
        | sum "+" product       -> add
        | sum "-" product       -> sub

    ?product: unary
        | product "*" unary     -> mul
        | product "/" unary     -> div

    ?unary: power
        | "-" unary             -> neg
        | "+" unary

    ?power: atom
        | atom "^" INT          -> pow

    ?atom: NUMBER               -> number
         | NAME "(" sum ")"     -> call
         | NAME                 -> var
         | "(" sum ")"

    NAME: /[a-zA-Z_][a-zA-Z0-9_]*/
    %import common.NUMBER
    %import common.INT
    %import common.WS_INLINE
    %ignore WS_INLINE
"""

FUNCTIONS = ('exp', 'ln', 'sqrt')
BINARY_OPERATORS = ('+', '-', '*', '/', '^')

# Printing precedences
_PRECEDENCE = {'+': 1, '-': 1, '*': 2, '/': 2, 'neg': 3, '^': 4}
_ATOM = 5


class ExprNode(object):
    """Node of an expression tree.

    `kind` is one of ``'const'``, ``'var'``, ``'unary'`` or ``'binary'``;
    `value` is the constant, the variable index, or the integer exponent of
    ``^``; `tag` is the function (``exp``, ``ln``, ``sqrt``, ``neg``) or the
    operator. Nodes are immutable and hashable.
    """

    __slots__ = ('kind', 'value', 'tag', 'children', 'names')

    def __init__(self, kind, value=None, tag=None, children=(), names=None):
        object.__setattr__(self, 'kind', kind)
        object.__setattr__(self, 'value', value)
        object.__setattr__(self, 'tag', tag)
        object.__setattr__(self, 'children', tuple(children))
        object.__setattr__(self, 'names', names)

    def __setattr__(self, name, value):
        raise AttributeError("ExprNode is immutable")

    def __reduce__(self):
        return (
            ExprNode,
            (self.kind, self.value, self.tag, self.children, self.names),
        )

    def _key(self):
        return (self.kind, self.value, self.tag, self.children)

    def __eq__(self, other):
        return isinstance(other, ExprNode) and self._key() == other._key()

    def __ne__(self, other):
        return not self == other

    def __hash__(self):
        return hash(self._key())

    def __repr__(self):
        return "ExprNode({!r})".format(to_text(self))

    @property
    def arity(self):
        """Number of variables the node was declared with."""
        return len(self.names) if self.names else None


def constant(value):
    return ExprNode('const', float(value))


def default_names(arity):
    """Return the variable names ``x1..xn``."""
    return tuple('x{}'.format(i + 1) for i in range(arity))


@v_args(inline=True)
class _TreeBuilder(Transformer):
    """Turn the parse tree into :class:`ExprNode` objects."""

    def __init__(self, names):
        super(_TreeBuilder, self).__init__()
        self._names = names
        self._index = {name: i for i, name in enumerate(names)}

    def _binary(self, tag, left, right, value=None):
        return ExprNode(
            'binary', value, tag, (left, right), names=self._names
        )

    def add(self, left, right):
        return self._binary('+', left, right)

    def sub(self, left, right):
        return self._binary('-', left, right)

    def mul(self, left, right):
        return self._binary('*', left, right)

    def div(self, left, right):
        return self._binary('/', left, right)

    def pow(self, base, exponent):
        exponent = int(exponent)
        return ExprNode(
            'binary',
            exponent,
            '^',
            (base, ExprNode('const', float(exponent), names=self._names)),
            names=self._names,
        )

    def neg(self, operand):
        return ExprNode('unary', None, 'neg', (operand,), names=self._names)

    def number(self, token):
        return ExprNode('const', float(token), names=self._names)

    def var(self, token):
        name = str(token)
        if name in FUNCTIONS:
            raise ParseError(
                "Function '{}' used without argument".format(name),
                {'position': token.start_pos},
            )
        if name not in self._index:
            if name.startswith('x') and name[1:].isdigit():
                message = (
                    "Variable index out of range: '{}' "
                    "(declared arity {})".format(name, len(self._names))
                )
            else:
                message = "Unknown identifier '{}'".format(name)
            raise ParseError(
                message, {'position': token.start_pos, 'name': name}
            )
        return ExprNode(
            'var', self._index[name], name, names=self._names
        )

    def call(self, token, argument):
        name = str(token)
        if name not in FUNCTIONS:
            raise ParseError(
                "Unknown function '{}'".format(name),
                {'position': token.start_pos, 'name': name},
            )
        return ExprNode('unary', None, name, (argument,), names=self._names)


@functools.lru_cache(maxsize=None)
def _parser():
    return Lark(GRAMMAR, parser='lalr')


def parse(text, arity, names=None):
    """Parse `text` into an :class:`ExprNode`.

    Variables are named ``x1..xn`` where ``n`` is `arity`, unless `names`
    gives another tuple of names (``('y',)`` for output injection maps,
    ``('z1', 'z2')`` for inverse maps):

        >>> from obslin import expr
        >>> node = expr.parse('x2', 2)
        >>> expr.evaluate(node, [0.7, 0.3])
        0.3
        >>> expr.parse('x3', 2)
        Traceback (most recent call last):
        ...
        obslin.error.ParseError: Variable index out of range: 'x3' (declared arity 2)

    :return: a :class:`ExprNode`
    :raise: :class:`obslin.error.ParseError` (syntax error with position,
        unknown identifier, variable index out of range)
    """
    if names is None:
        names = default_names(arity)
    names = tuple(names)
    if len(names) != arity:
        raise ValueError("Expected {} variable names".format(arity))
    try:
        tree = _parser().parse(text)
    except UnexpectedInput as exc:
        position = getattr(exc, 'pos_in_stream', None)
        raise ParseError(
            "Syntax error in '{}' at position {}".format(text, position),
            {'position': position, 'text': text},
        )
    try:
        node = _TreeBuilder(names).transform(tree)
    except VisitError as exc:
        if isinstance(exc.orig_exc, ParseError):
            exc.orig_exc.info['text'] = text
            raise exc.orig_exc
        raise
    if node.names is None:
        node = ExprNode(
            node.kind, node.value, node.tag, node.children, names=names
        )
    return node


def to_text(node, names=None):
    """Canonical printer: emit `node` in the grammar accepted by
    :func:`parse`, with the minimal parentheses keeping the tree shape.
    """
    names = names or node.names
    return _print(node, names)[0]


def _print(node, names):
    if node.kind == 'const':
        if node.value < 0:
            return '(-{!r})'.format(-node.value), _ATOM
        return repr(node.value), _ATOM
    if node.kind == 'var':
        if names:
            return names[node.value], _ATOM
        return 'x{}'.format(node.value + 1), _ATOM
    if node.kind == 'unary':
        text, precedence = _print(node.children[0], names)
        if node.tag == 'neg':
            if precedence < _PRECEDENCE['neg']:
                text = '({})'.format(text)
            return '-' + text, _PRECEDENCE['neg']
        return '{}({})'.format(node.tag, text), _ATOM
    tag = node.tag
    own = _PRECEDENCE[tag]
    left, left_precedence = _print(node.children[0], names)
    if tag == '^':
        if left_precedence < _ATOM:
            left = '({})'.format(left)
        return '{}^{}'.format(left, node.value), own
    right, right_precedence = _print(node.children[1], names)
    if left_precedence < own:
        left = '({})'.format(left)
    if right_precedence <= own:
        right = '({})'.format(right)
    return '{}{}{}'.format(left, tag, right), own


def _domain_error(message, node, point):
    return DomainError(
        "{} in '{}'".format(message, to_text(node)),
        {'subexpression': to_text(node), 'point': list(point)},
    )


def evaluate(node, x):
    """Evaluate `node` at the real point `x` in IEEE double precision.

        >>> from obslin import expr
        >>> expr.evaluate(expr.parse('exp(x1)', 1), [0.0])
        1.0

    :return: a float
    :raise: :class:`obslin.error.DomainError` (logarithm or square root of a
        non-positive number, division by zero, overflow), reporting the
        offending subexpression, `ValueError` (`x` does not match the
        declared arity)
    """
    values = [float(value) for value in x]
    if node.arity is not None and len(values) != node.arity:
        raise ValueError(
            "Expected a point with {} coordinates, got {}".format(
                node.arity, len(values)
            )
        )
    return _evaluate(node, values)


def _evaluate(node, x):
    kind = node.kind
    if kind == 'const':
        return node.value
    if kind == 'var':
        return x[node.value]
    if kind == 'unary':
        arg = _evaluate(node.children[0], x)
        tag = node.tag
        if tag == 'neg':
            return -arg
        if tag == 'exp':
            try:
                return math.exp(arg)
            except OverflowError:
                raise _domain_error("Overflow", node, x)
        if not arg > 0.0:
            raise _domain_error(
                "Non-positive argument {!r}".format(arg), node, x
            )
        return math.log(arg) if tag == 'ln' else math.sqrt(arg)
    left = _evaluate(node.children[0], x)
    tag = node.tag
    if tag == '^':
        try:
            return left ** node.value
        except OverflowError:
            raise _domain_error("Overflow", node, x)
    right = _evaluate(node.children[1], x)
    if tag == '+':
        return left + right
    if tag == '-':
        return left - right
    if tag == '*':
        return left * right
    if right == 0.0:
        raise _domain_error("Division by zero", node, x)
    return left / right


def evaluate_series(node, arguments):
    """Evaluate `node` over truncated series arithmetic, binding variable
    ``i`` to ``arguments[i]`` (a :class:`TruncatedSeries`). Used to expand
    compositions such as ``b(h(x))``.

    :raise: :class:`obslin.error.DomainError`
    """
    template = arguments[0]
    kind = node.kind
    if kind == 'const':
        return TruncatedSeries.constant(
            node.value, template.n, template.order, template.center
        )
    if kind == 'var':
        return arguments[node.value]
    if kind == 'unary':
        arg = evaluate_series(node.children[0], arguments)
        if node.tag == 'neg':
            return -arg
        try:
            if node.tag == 'exp':
                return arg.exp()
            if node.tag == 'ln':
                return arg.log()
            return arg.sqrt()
        except DomainError as exc:
            raise DomainError(
                "{} in '{}'".format(exc.message, to_text(node)),
                {'subexpression': to_text(node)},
            )
    left = evaluate_series(node.children[0], arguments)
    if node.tag == '^':
        return left ** node.value
    right = evaluate_series(node.children[1], arguments)
    if node.tag == '+':
        return left + right
    if node.tag == '-':
        return left - right
    if node.tag == '*':
        return left * right
    try:
        return left / right
    except DomainError:
        raise DomainError(
            "Division by zero in '{}'".format(to_text(node)),
            {'subexpression': to_text(node)},
        )


def series_eval(node, center, order):
    """Return the Taylor expansion of `node` about `center` truncated at
    total degree `order`:

        >>> from obslin import expr
        >>> s = expr.series_eval(expr.parse('x1/(1+x1)', 1), [0.0], 3)
        >>> s.coefficients()
        {(1,): 1.0, (2,): -1.0, (3,): 1.0}

    :return: a :class:`obslin.taylor.TruncatedSeries`
    :raise: :class:`obslin.error.DomainError` (function not analytic at
        `center`), `ValueError` (negative order)
    """
    if order < 0:
        raise ValueError("The truncation order must be non-negative")
    n = node.arity or len(center)
    arguments = [
        TruncatedSeries.variable(i, n, order, center) for i in range(n)
    ]
    return evaluate_series(node, arguments)
