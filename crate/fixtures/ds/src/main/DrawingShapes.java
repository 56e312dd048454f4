package main;

import java.awt.BorderLayout;
import java.awt.Color;
import java.awt.event.ActionEvent;
import java.awt.event.ActionListener;
import javax.swing.JButton;
import javax.swing.JComboBox;
import javax.swing.JFrame;
import javax.swing.JLabel;
import javax.swing.JPanel;

import gui.PaintJPanel;

/*
 * Application window of the shapes program. The user picks one of the
 * shapes and a color from the two combo boxes, then presses and drags the
 * mouse on the panel to add shapes. Undo removes the newest shape and clear
 * removes all shapes.
 */
public class DrawingShapes {
    private static PaintJPanel paintJPanel; // canvas that holds the shapes
    private static JComboBox colorJComboBox;
    private static JComboBox shapeJComboBox; // lists the shapes the user can pick
    private static JButton undoJButton; // removes the newest shape
    private static JButton clearJButton;
    private static JLabel statusJLabel; // names the selected shape

    // combo box with the names of the shapes
    private static JComboBox createShapeBox() {
        String[] shapeNames = { "Line", "Oval", "Rectangle" };
        return new JComboBox(shapeNames);
    }

    // build the frame and wire the shape and color selections to the panel
    public static void main(String[] args) {
        JFrame application = new JFrame();
        paintJPanel = new PaintJPanel();
        colorJComboBox = new JComboBox(new String[] { "Black", "Red", "Blue" });
        shapeJComboBox = createShapeBox();
        undoJButton = new JButton("Undo");
        clearJButton = new JButton("Clear");
        statusJLabel = new JLabel("Select a shape");

        shapeJComboBox.setMaximumRowCount(3);
        shapeJComboBox.setActionCommand("type");
        shapeJComboBox.addActionListener(paintJPanel);
        colorJComboBox.setActionCommand("color");
        colorJComboBox.addActionListener(paintJPanel);
        undoJButton.setActionCommand("undo");
        clearJButton.setActionCommand("clear");
        undoJButton.addActionListener(paintJPanel);
        clearJButton.addActionListener(paintJPanel);

        JPanel controls = new JPanel();
        controls.add(shapeJComboBox);
        controls.add(colorJComboBox);
        controls.add(undoJButton);
        controls.add(clearJButton);

        application.add(controls, BorderLayout.NORTH);
        application.add(paintJPanel, BorderLayout.CENTER);
        application.add(statusJLabel, BorderLayout.SOUTH);
        application.setDefaultCloseOperation(JFrame.EXIT_ON_CLOSE);
        application.setSize(500, 400);
        application.setVisible(true);
    }
}
