# tape.py
# --------------------------------------------------------------
# Cinta dinámica de autodiferenciación en modo inverso
# --------------------------------------------------------------
#  • Una cinta por pasada forward; se descarta tras backward().
#  • La cinta activa es local al contexto (hilo / tarea): pasadas
#    concurrentes usan cintas independientes.
#  • Los nodos se añaden en orden de creación, así que la secuencia es
#    topológica por construcción.
# --------------------------------------------------------------
from __future__ import annotations

from contextvars import ContextVar, Token
from dataclasses import dataclass, field
from typing import Callable, Iterator, Optional, Sequence, TypeAlias

import numpy as np

from ...errors import GraphError
from ..core.tensor_core import Array, Tensor

BackwardFn: TypeAlias = Callable[[Array], Sequence[Optional[Array]]]

_ACTIVE_TAPE: ContextVar[Optional["Tape"]] = ContextVar("dpenet_active_tape", default=None)


@dataclass(slots=True)
class Node:
    """Operación registrada: entradas, salida y regla de retropropagación."""
    op: str
    inputs: tuple[Tensor, ...]
    output: Tensor
    backward: BackwardFn


class Gradients:
    """
    Mapa hoja → gradiente devuelto por :func:`backward`.

    Una hoja que no influye en la pérdida recibe un gradiente nulo.
    """
    __slots__ = ("_grads",)

    def __init__(self) -> None:
        self._grads: dict[int, tuple[Tensor, Array]] = {}

    def _accumulate(self, leaf: Tensor, grad: Array) -> None:
        key = id(leaf)
        if key in self._grads:
            self._grads[key] = (leaf, self._grads[key][1] + grad)
        else:
            self._grads[key] = (leaf, grad)

    def __getitem__(self, leaf: Tensor) -> Tensor:
        entry = self._grads.get(id(leaf))
        if entry is None:
            return Tensor._wrap(np.zeros_like(leaf.data), False, "grad")
        return Tensor._wrap(entry[1].astype(leaf.dtype, copy=False), False, "grad")

    def __contains__(self, leaf: object) -> bool:
        return id(leaf) in self._grads

    def __len__(self) -> int:
        return len(self._grads)

    def leaves(self) -> Iterator[Tensor]:
        return (leaf for leaf, _ in self._grads.values())


class Tape:
    """
    Grafo de autodiferenciación (AutodiffGraph): secuencia de nodos sólo-añadir.

    Uso::

        with Tape() as tape:
            loss = reduce_mean(f(x))
        grads = backward(loss, tape)
    """

    def __init__(self) -> None:
        self.nodes: list[Node] = []
        self._outputs: set[int] = set()
        self._token: Optional[Token[Optional[Tape]]] = None
        self._consumed = False

    def __enter__(self) -> Tape:
        if self._consumed:
            raise GraphError("La cinta ya fue consumida por backward().")
        self._token = _ACTIVE_TAPE.set(self)
        return self

    def __exit__(self, *exc: object) -> None:
        if self._token is not None:
            _ACTIVE_TAPE.reset(self._token)
            self._token = None

    def record(self, node: Node) -> None:
        if self._consumed:
            raise GraphError("No se puede registrar en una cinta ya consumida.")
        self.nodes.append(node)
        self._outputs.add(id(node.output))

    def produced(self, tensor: Tensor) -> bool:
        return id(tensor) in self._outputs

    def __len__(self) -> int:
        return len(self.nodes)

    def backward(self, loss: Tensor) -> Gradients:
        return backward(loss, self)


def current_tape() -> Optional[Tape]:
    return _ACTIVE_TAPE.get()


def apply_op(op: str, inputs: Sequence[Tensor], value: Array, backward_fn: BackwardFn) -> Tensor:
    """
    Envuelve el resultado de una operación y lo registra en la cinta activa.

    El resultado requiere gradiente sólo si alguna entrada lo requiere y hay una
    cinta activa; sin cinta las operaciones son evaluaciones puras.
    """
    tape = _ACTIVE_TAPE.get()
    needs_grad = tape is not None and any(t.requires_grad for t in inputs)
    out = Tensor._wrap(value, needs_grad, op)
    if needs_grad and tape is not None:
        tape.record(Node(op, tuple(inputs), out, backward_fn))
    return out


def backward(loss: Tensor, graph: Tape) -> Gradients:
    """
    Barrido inverso en orden topológico desde ``loss``.

    Los gradientes se acumulan por suma cuando un tensor alimenta a varios
    consumidores. Tras el barrido la cinta queda descartada.
    """
    if loss.numel != 1:
        raise GraphError(f"La pérdida debe ser escalar, su forma es {loss.shape}.")
    if graph._consumed:
        raise GraphError("La cinta ya fue consumida por backward().")

    end = next((i for i in range(len(graph.nodes) - 1, -1, -1)
                if graph.nodes[i].output is loss), None)
    if end is None:
        raise GraphError("La pérdida no fue producida por esta cinta.")

    pending: dict[int, Array] = {id(loss): np.ones_like(loss.data)}
    result = Gradients()
    for node in reversed(graph.nodes[: end + 1]):
        grad_out = pending.pop(id(node.output), None)
        if grad_out is None:
            continue
        input_grads = node.backward(grad_out)
        for inp, grad in zip(node.inputs, input_grads):
            if grad is None or not inp.requires_grad:
                continue
            if grad.shape != inp.data.shape:
                raise GraphError(
                    f"'{node.op}' devolvió un gradiente {grad.shape} para una entrada {inp.data.shape}."
                )
            if graph.produced(inp):
                key = id(inp)
                pending[key] = pending[key] + grad if key in pending else grad
            else:
                result._accumulate(inp, grad)

    graph.nodes.clear()
    graph._outputs.clear()
    graph._consumed = True
    return result


AutodiffGraph = Tape
