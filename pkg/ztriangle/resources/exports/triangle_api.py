import csv
import io
import json
from typing import Literal

from ztriangle.resources.errors import UsageError
from ztriangle.resources.primes import PrimeTable
from ztriangle.resources.sequences_stats import SequenceRecord, write_bfile
from ztriangle.resources.z_engine import LeftEdgeEntry, TriangleSlice


class TriangleAPI:
    def __init__(self, table: PrimeTable):
        self.table = table

    def to_csv(self, triangle: TriangleSlice) -> str:
        """
        One "m,n,value" line per entry, values in exact decimal.
        :param triangle: the triangle slice
        :return: the CSV text
        """
        buffer = io.StringIO()
        writer = csv.writer(buffer, lineterminator='\n')
        writer.writerow(['m', 'n', 'value'])
        for m, row in enumerate(triangle.rows):
            for n, entry in enumerate(row, start=1):
                writer.writerow([m, n, entry.value(self.table)])
        return buffer.getvalue()

    def to_json(self, triangle: TriangleSlice) -> str:
        """
        Factored form: every entry is a list of [prime_index, exponent] pairs.
        :param triangle: the triangle slice
        :return: the JSON text
        """
        document = {'width': triangle.width,
                    'depth': triangle.depth,
                    'rows': [[[list(pair) for pair in entry.factors] for entry in row] for row in triangle.rows]}
        return json.dumps(document, separators=(',', ':')) + '\n'

    def export_triangle(self, triangle: TriangleSlice, fmt: Literal['csv', 'json']) -> str:
        if fmt == 'csv':
            return self.to_csv(triangle)
        if fmt == 'json':
            return self.to_json(triangle)
        raise UsageError(f"Unknown triangle format {fmt!r}.")

    def left_edge_table(self, entries: list[LeftEdgeEntry]) -> str:
        # m, decimal value, factorization
        return ''.join(f"{entry.m} {entry.value.value(self.table)} {entry.value.factorization(self.table)}\n"
                       for entry in entries)

    def left_edge_bfile(self, entries: list[LeftEdgeEntry], offset: int = 0) -> str:
        terms = tuple(entry.value.value(self.table) for entry in entries)
        return write_bfile(SequenceRecord('left-edge', terms), offset=offset)
