import numpy                                                        as _np
import pandas                                                       as _pd


class ReportWriter():

    '''
    Writes :class:`pandas.DataFrame` reports into ``xlsxwriter`` worksheets with a formatted header row,
    configurable column widths and frozen panes, so that operators can browse run outputs in Excel.
    '''
    DEFAULT_WIDTH                                       = 14

    def __init__(self):
        pass

    def populate_excel_worksheet(self, df, workbook, worksheet, widths_dict={}, freeze_col_nb=0):
        '''
        :param pandas.DataFrame df: the data to write
        :param xlsxwriter.Workbook workbook: workbook owning ``worksheet``; used to create cell formats
        :param xlsxwriter.worksheet.Worksheet worksheet: where to write
        :param dict widths_dict: optional column widths, keyed by column name
        :param int freeze_col_nb: number of leading columns to freeze in addition to the header row
        '''
        header_format                                   = workbook.add_format({"bold":         True,
                                                                               "bg_color":     "#D9E1F2",
                                                                               "border":       1,
                                                                               "text_wrap":    True,
                                                                               "valign":       "top"})
        float_format                                    = workbook.add_format({"num_format": "0.000000E+00"})

        columns                                         = list(df.columns)
        for col_idx, col in enumerate(columns):
            worksheet.write(0, col_idx, str(col), header_format)
            width                                       = widths_dict.get(col, self.DEFAULT_WIDTH)
            worksheet.set_column(col_idx, col_idx, width)

        for row_idx, row in enumerate(df.itertuples(index=False), start=1):
            for col_idx, value in enumerate(row):
                self._write_cell(worksheet, row_idx, col_idx, value, float_format)

        worksheet.freeze_panes(1, freeze_col_nb)

    def _write_cell(self, worksheet, row, col, value, float_format):
        # GOTCHA: xlsxwriter refuses NaN and inf unless the workbook was created with the nan_inf_to_errors
        #       option, and it does not know numpy scalar types. Normalize both here.
        if isinstance(value, (_np.bool_, bool)):
            worksheet.write_boolean(row, col, bool(value))
        elif isinstance(value, (_np.integer, int)):
            worksheet.write_number(row, col, int(value))
        elif isinstance(value, (_np.floating, float)):
            if _np.isfinite(value):
                worksheet.write_number(row, col, float(value), float_format)
            else:
                worksheet.write_string(row, col, str(value))
        elif value is None or (not isinstance(value, str) and _pd.isna(value)):
            worksheet.write_blank(row, col, None)
        else:
            worksheet.write_string(row, col, str(value))
