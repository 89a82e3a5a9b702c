"""
dispatch.py

Provides the Dispatch class, which sends each cell of a sweep (one
axis value and the deployment it describes) to every registered column
evaluator and collects the values in registration order.
"""
from collections import OrderedDict


class Dispatch(object):
    def __init__(self, cells=None):
        self.cells = cells
        self.handlers = []
        self.names = set()

    def register(self, name, callback):
        """
        register: string, function: string, cell -> value -> None

        Register will save the given name and callback for use when a
        cell is dispatched. The callback is called with its name and the
        cell, and its return value is stored under that name.
        """
        if name in self.names:
            raise ValueError("A column has already been registered with the name '%s'" % name)

        self.handlers.append(
            {'name': name,
             'callback': callback}
        )

        self.names.add(name)

    @property
    def columns(self):
        return [handler['name'] for handler in self.handlers]

    def run(self):
        """
        run: -> [OrderedDict]

        run dispatches every cell given to __init__, in order, and
        returns one result mapping per cell.
        """
        if self.cells is None:
            raise ValueError("Cells must be provided to __init__ to execute run()")

        return [self.dispatch(cell) for cell in self.cells]

    def dispatch(self, cell):
        """
        dispatch: cell -> OrderedDict of name -> value

        Calls every registered callback on the given cell. Each result
        holds every registered column.
        """
        values = OrderedDict()
        for handler in self.handlers:
            values[handler['name']] = handler['callback'](handler['name'], cell)
        return values
