from dpenet.printing.core import BasicPrinter, ReportStyle
from dpenet.printing.printable import Printable, RecordValue
from dpenet.printing.report_printer import ReportFormatter

__all__ = [
    'BasicPrinter',
    'ReportStyle',
    'Printable',
    'RecordValue',
    'ReportFormatter',
]
